#include <cmath>
#include <random>

#include "doctest.h"
#include "lct/families.hpp"

using namespace lct;

TEST_CASE("free and oscillator families satisfy a = -m b'") {
  const PhysicalConstants c(1.0, 1.0);
  const auto free = free_particle_family(c);
  const auto ho = harmonic_oscillator_family(c, 1.0);
  for (double t : {0.1, 1.0, 3.0, 17.0}) {
    const auto r = hj_compatibility(free, t, c);
    CHECK(r.residual == 0.0);
    CHECK(r.ok);
  }
  const auto r = hj_compatibility(ho, 0.7, c);
  CHECK(r.residual < 1e-15);
  CHECK(r.ok);
}

TEST_CASE("hj_compatibility sweep over 100 regular times") {
  const PhysicalConstants c(0.8, 1.7);
  const auto ho = harmonic_oscillator_family(c, 2.3);
  const auto free = free_particle_family(c);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> time(0.01, 10.0);
  int checked = 0;
  while (checked < 100) {
    const double t = time(rng);
    if (std::abs(std::sin(2.3 * t)) < 1e-3) continue;
    CHECK(hj_compatibility(ho, t, c).residual <= 1e-8);
    CHECK(hj_compatibility(free, t, c).residual <= 1e-8);
    ++checked;
  }
}

TEST_CASE("sign-flipped Galilean family fails the constraint") {
  const PhysicalConstants c;
  TransformFamily flipped;
  flipped.label = "flipped";
  flipped.evaluate = [](double t) { return SymplecticMatrixd(1.0, t, 0.0, 1.0); };
  const auto r = hj_compatibility(flipped, 1.5, c);
  CHECK(r.residual == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(r.ok);
}

TEST_CASE("singular times are domain errors") {
  const PhysicalConstants c;
  CHECK_THROWS_AS(hj_compatibility(free_particle_family(c), 0.0, c), DomainError);
  CHECK_THROWS_AS(hj_compatibility(harmonic_oscillator_family(c, 1.0), kPi, c), DomainError);
  CHECK_NOTHROW(hj_compatibility(harmonic_oscillator_family(c, 1.0), 0.5 * kPi, c));
}

TEST_CASE("finite-difference derivative is second order") {
  const PhysicalConstants c;
  const auto ho = harmonic_oscillator_family(c, 1.3);
  const double t = 0.9;
  const double exact = ho.derivative(t).b();
  double previous = 0.0;
  for (double h : {4e-2, 2e-2, 1e-2}) {
    const double err = std::abs(finite_difference_rate(ho, t, h).b() - exact);
    if (previous > 0.0) CHECK(previous / err == doctest::Approx(4.0).epsilon(0.02));
    previous = err;
  }
}

TEST_CASE("family without analytic rate uses finite differences") {
  const PhysicalConstants c;
  auto ho = harmonic_oscillator_family(c, 1.0);
  const auto analytic = ho.derivative(0.4);
  ho.rate = nullptr;
  CHECK_FALSE(ho.has_analytic_rate());
  CHECK(ho.derivative(0.4).isApprox(analytic, 1e-9));
  CHECK(hj_compatibility(ho, 0.4, c).ok);
}

TEST_CASE("caustic counting") {
  const PhysicalConstants c;
  const auto ho = harmonic_oscillator_family(c, 1.0);
  CHECK(count_caustics(ho, 1.0).crossings == 0);
  CHECK(count_caustics(ho, 1.0).initial_sign == -1);
  CHECK(count_caustics(ho, 4.0).crossings == 1);
  CHECK(count_caustics(ho, 7.0).crossings == 2);
  CHECK(count_caustics(free_particle_family(c), 50.0).crossings == 0);
}
