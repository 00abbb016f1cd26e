#include <cmath>
#include <random>

#include "doctest.h"
#include "lct/hamilton_jacobi.hpp"
#include "lct/kernel.hpp"
#include "lct/schrodinger.hpp"
#include "random_matrices.hpp"

using namespace lct;

namespace {

const PhysicalConstants kUnits;

WaveFunction as_input(WaveFunction psi) {
  psi.label = SpaceLabel::Q;
  return psi;
}

WaveFunction unit_gaussian(const Grid& grid, double sigma0 = 1.0, double center = 0.0,
                           double momentum = 0.0) {
  return as_input(
      WaveFunction::sample(gaussian_packet(sigma0, center, momentum, kUnits), grid));
}

}  // namespace

TEST_CASE("free-particle kernel at t = 1") {
  const auto k = build_kernel(free_particle_family(kUnits).at(1.0), Representation::qQ, 1.0, kUnits);
  CHECK(std::abs(k.prefactor) == doctest::Approx(0.398942280401433).epsilon(1e-12));
  CHECK(std::arg(k.prefactor) == doctest::Approx(-kPi / 4).epsilon(1e-14));
  CHECK(k.phase == w1_from_matrix(free_particle_family(kUnits).at(1.0)));
  const complexd expected = std::sqrt(1.0 / complexd(0.0, 2.0 * kPi)) *
                            std::exp(complexd(0.0, 0.5 * (1.3 - 0.4) * (1.3 - 0.4)));
  CHECK(std::abs(k(1.3, 0.4) - expected) < 1e-15);
}

TEST_CASE("quarter-period oscillator kernel is a scaled Fourier kernel") {
  const auto ho = harmonic_oscillator_family(kUnits, 1.0);
  const auto k = build_kernel(ho.at(kPi / 2), Representation::qQ, kPi / 2, kUnits);
  for (double q : {-1.0, 0.5}) {
    for (double Q : {-2.0, 0.25}) {
      const complexd expected =
          std::sqrt(1.0 / complexd(0.0, 2.0 * kPi)) * std::exp(complexd(0.0, -q * Q));
      CHECK(std::abs(k(q, Q) - expected) < 1e-14);
    }
  }
}

TEST_CASE("kernels reject vanishing coefficients") {
  const auto ho = harmonic_oscillator_family(kUnits, 1.0);
  CHECK_THROWS_AS(build_kernel(ho.at(kPi), Representation::qQ, kPi, kUnits), SingularRepresentation);
  CHECK_THROWS_AS(build_kernel(ho, kPi, kUnits), DomainError);
  CHECK_THROWS_AS(build_kernel(SymplecticMatrixd::Identity(), Representation::qQ, 0.0, kUnits),
                  SingularRepresentation);
  CHECK_THROWS_AS(build_kernel(free_particle_family(kUnits).at(1.0), Representation::pP, 1.0, kUnits),
                  SingularRepresentation);
}

TEST_CASE("prefactor modulus for every representation") {
  std::mt19937_64 rng(8);
  const PhysicalConstants c(0.7, 1.9);
  for (int n = 0; n < 50; ++n) {
    const auto m = testing::random_symplectic(rng, 0.05, 3.0);
    const std::pair<Representation, double> cases[] = {{Representation::qQ, m.b()},
                                                        {Representation::qP, m.d()},
                                                        {Representation::pQ, m.a()},
                                                        {Representation::pP, m.c()}};
    for (const auto& [rep, beta] : cases) {
      const auto k = build_kernel(m, rep, 0.0, c);
      CHECK(std::abs(k.prefactor) ==
            doctest::Approx(1.0 / std::sqrt(2.0 * kPi * c.hbar * std::abs(beta))));
      CHECK(k.phase.kind == generator_kind(rep));
      // The kernel value is reproducible from its fields.
      const complexd v = k.prefactor * std::exp(complexd(0.0, k.phase(0.3, -0.8) / c.hbar));
      CHECK(std::abs(k(0.3, -0.8) - v) <= 1e-14 * std::abs(v));
    }
  }
}

TEST_CASE("direct application spreads a free Gaussian") {
  const Grid grid = Grid::centered(2048, 0.02);
  const auto k = build_kernel(free_particle_family(kUnits), 1.0, kUnits);
  const auto out = apply_kernel_direct(k, unit_gaussian(grid), grid);
  CHECK(out.label == SpaceLabel::q);
  CHECK(std::abs(out.norm() - 1.0) <= 1e-6);
  CHECK(std::abs(out.variance() - 1.25) <= 1e-6);
  const auto exact = WaveFunction::sample(gaussian_free_closed_form(1.0, 0.0, 0.0, 1.0, kUnits), grid);
  CHECK(l2_distance(out, exact) <= 1e-6);
}

TEST_CASE("direct application with moving packet and non-unit constants") {
  const PhysicalConstants c(0.5, 2.0);
  const Grid grid = Grid::centered(2048, 0.02);
  const auto k = build_kernel(free_particle_family(c), 3.0, c);
  const auto in = as_input(WaveFunction::sample(gaussian_packet(0.8, -2.0, 1.2, c), grid));
  const auto out = apply_kernel_direct(k, in, grid);
  const auto exact = WaveFunction::sample(gaussian_free_closed_form(0.8, -2.0, 1.2, 3.0, c), grid);
  CHECK(l2_distance(out, exact) <= 1e-6);
  CHECK(out.mean() == doctest::Approx(-2.0 + 1.2 * 3.0 / 2.0).epsilon(1e-8));
}

TEST_CASE("zero input gives zero output") {
  const Grid grid = Grid::centered(256, 0.05);
  const auto k = build_kernel(free_particle_family(kUnits), 1.0, kUnits);
  const WaveFunction zero(Eigen::VectorXcd::Zero(256), grid, SpaceLabel::Q);
  CHECK(apply_kernel_direct(k, zero, grid).samples.cwiseAbs().maxCoeff() == 0.0);
  CHECK(apply_kernel_fast(k, zero, grid).samples.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("oscillator ground state returns after a full period") {
  // Just short of the second caustic: b = sin(eps), the kernel is a
  // near-delta chirp. The input grid must resolve it; the output grid only
  // has to resolve the state.
  const double eps = 1e-3;
  const double t = 2.0 * kPi - eps;
  const auto ho = harmonic_oscillator_family(kUnits, 1.0);
  const auto k = build_kernel(ho, t, kUnits);
  CHECK(k.maslov_index == 1);

  const Grid in_grid = Grid::centered(1 << 18, 13.0 / (1 << 18));
  const Grid out_grid = Grid::centered(512, 12.0 / 512);
  const auto ground = harmonic_ground_state(1.0, kUnits);
  const auto in = as_input(WaveFunction::sample(ground, in_grid));
  const auto reference = WaveFunction::sample(ground, out_grid);

  for (const bool fast : {false, true}) {
    const auto out = fast ? apply_kernel_fast(k, in, out_grid) : apply_kernel_direct(k, in, out_grid);
    const complexd overlap = inner_product(reference, out);
    CHECK(std::abs(std::abs(overlap) - 1.0) <= 2e-3);
    // Stationary phase exp(-i w t / 2), reached only with the Maslov-continued
    // prefactor.
    CHECK(std::abs(std::arg(overlap * std::exp(complexd(0.0, 0.5 * t)))) <= 2e-3);
  }
}

TEST_CASE("identity qP kernel is the momentum eigenfunction") {
  // phi(P) = (2 s^2 / pi)^(1/4) exp(-s^2 (P - p0)^2) is the momentum-space
  // form of the unit Gaussian packet; <q|P> takes it back to position space.
  const double s = 0.8, p0 = 0.6;
  const auto k = build_kernel(SymplecticMatrixd::Identity(), Representation::qP, 0.0, kUnits);
  const Grid P_grid = Grid::centered(1024, 0.02);
  const WaveFunction phi = WaveFunction::sample(
      [&](double P) { return complexd(std::pow(2.0 * s * s / kPi, 0.25) * std::exp(-s * s * (P - p0) * (P - p0))); },
      P_grid, SpaceLabel::P);
  const Grid q_grid = Grid::centered(256, 0.05);
  const auto psi = apply_kernel_direct(k, phi, q_grid);
  CHECK(psi.label == SpaceLabel::q);
  const auto expected = WaveFunction::sample(gaussian_packet(s, 0.0, p0, kUnits), q_grid);
  CHECK(max_abs_difference(psi, expected) <= 1e-10);

  CHECK_THROWS_AS(apply_kernel_direct(k, as_input(phi), q_grid), ConfigError);
  CHECK_THROWS_AS(apply_kernel_fast(k, phi, q_grid), ConfigError);
}

TEST_CASE("fast path matches direct on the matched FFT grid") {
  const auto k = build_kernel(free_particle_family(kUnits), 1.0, kUnits);
  const Grid grid = matched_grid(k, 4096);
  CHECK(fast_path_for(k, grid, grid) == FastPath::matched_fft);
  const auto in = unit_gaussian(grid);
  const auto direct = apply_kernel_direct(k, in, grid);
  const auto fast = apply_kernel_fast(k, in, grid);
  CHECK(relative_deviation(fast, direct) <= 1e-8);
  CHECK(std::abs(fast.variance() - direct.variance()) <= 1e-8);
  CHECK(std::abs(fast.mean() - direct.mean()) <= 1e-8);
  CHECK(std::abs(fast.variance() - 1.25) <= 1e-6);
}

TEST_CASE("fast path matches direct through the chirp-z transform") {
  const auto k = build_kernel(free_particle_family(kUnits), 1.0, kUnits);
  const Grid in_grid = Grid::centered(1500, 0.02);
  const Grid out_grid(-9.0, 0.015, 1201);
  CHECK(fast_path_for(k, in_grid, out_grid) == FastPath::chirp_z);
  const auto in = unit_gaussian(in_grid, 1.0, 0.5, -0.7);
  const auto direct = apply_kernel_direct(k, in, out_grid);
  const auto fast = apply_kernel_fast(k, in, out_grid);
  CHECK(relative_deviation(fast, direct) <= 1e-8);
}

TEST_CASE("delta input returns a kernel column") {
  const auto k = build_kernel(harmonic_oscillator_family(kUnits, 1.0), 0.6, kUnits);
  const Grid grid = matched_grid(k, 256);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(256);
  v[100] = 1.0;
  const WaveFunction delta(v, grid, SpaceLabel::Q);
  ApplyOptions loose;
  loose.check_resolution = false;
  loose.grid_tol = 1e9;
  for (const bool fast : {false, true}) {
    const auto out = fast ? apply_kernel_fast(k, delta, grid, loose)
                          : apply_kernel_direct(k, delta, grid, loose);
    for (Eigen::Index i = 0; i < 256; i += 17) {
      const complexd expected = k(grid[i], grid[100]) * grid.spacing;
      CHECK(std::abs(out.samples[i] - expected) <= 1e-12 * std::abs(expected));
    }
  }
}

TEST_CASE("fast and direct agree for random symplectic matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> bmag(0.1, 10.0), ad(-1.5, 1.5), pos(-1.0, 1.0);
  std::bernoulli_distribution flip(0.5);
  ApplyOptions loose;
  loose.check_resolution = false;
  loose.grid_tol = 1e9;
  for (int n = 0; n < 20; ++n) {
    const double b = flip(rng) ? bmag(rng) : -bmag(rng);
    const double a = ad(rng), d = ad(rng);
    const SymplecticMatrixd m(a, b, (a * d - 1.0) / b, d);
    const auto k = build_kernel(m, Representation::qQ, 0.0, kUnits);
    const Grid in_grid = Grid::centered(512, 0.04);
    const auto in = unit_gaussian(in_grid, 0.5 + 0.5 * std::abs(pos(rng)), pos(rng), pos(rng));
    const Grid out_grid = (n % 2 == 0) ? matched_output_grid(k, in_grid)
                                       : Grid(-6.0 + pos(rng), 0.03, 400);
    const auto direct = apply_kernel_direct(k, in, out_grid, loose);
    const auto fast = apply_kernel_fast(k, in, out_grid, loose);
    CHECK(relative_deviation(fast, direct) <= 1e-8);
  }
}

TEST_CASE("fast application is deterministic") {
  const auto k = build_kernel(harmonic_oscillator_family(kUnits, 1.0), 1.0, kUnits);
  const Grid in_grid = Grid::centered(1024, 0.02);
  const Grid out_grid = Grid::centered(700, 0.025);
  const auto in = unit_gaussian(in_grid, 0.7, 0.3, 0.2);
  const auto first = apply_kernel_fast(k, in, out_grid);
  const auto second = apply_kernel_fast(k, in, out_grid);
  CHECK((first.samples.array() == second.samples.array()).all());
}

TEST_CASE("kernel unitarity on resolved grids") {
  const auto free = build_kernel(free_particle_family(kUnits), 1.0, kUnits);
  const Grid grid = matched_grid(free, 2048);
  CHECK(kernel_unitarity_check(free, grid, grid, 8) <= 1e-3);

  const auto quarter =
      build_kernel(harmonic_oscillator_family(kUnits, 1.0).at(kPi / 2), Representation::qQ, kPi / 2, kUnits);
  const Grid qgrid = matched_grid(quarter, 512);
  CHECK(kernel_unitarity_check(quarter, qgrid, qgrid, 16) <= 1e-10);

  const Grid fine = matched_grid(free, 4096);
  const auto out = apply_kernel_fast(free, unit_gaussian(fine), fine);
  CHECK(std::abs(out.norm() - 1.0) <= 1e-6);
}

TEST_CASE("propagators compose") {
  const PhysicalConstants c;
  const Grid grid = Grid::centered(2048, 0.015);
  const auto in = unit_gaussian(grid, 0.8, 0.4, 0.5);

  SUBCASE("free particle") {
    const auto fam = free_particle_family(c);
    const auto k1 = build_kernel(fam, 0.4, c);
    const auto k2 = build_kernel(fam.at(0.7), Representation::qQ, 0.7, c);
    const auto k12 = build_kernel(compose(fam.at(0.7), fam.at(0.4)), Representation::qQ, 1.1, c);
    auto mid = apply_kernel_direct(k1, in, grid);
    mid.label = SpaceLabel::Q;
    const auto two_step = apply_kernel_direct(k2, mid, grid);
    const auto one_step = apply_kernel_direct(k12, in, grid);
    CHECK(l2_distance(two_step, one_step) <= 1e-5);
  }
  SUBCASE("oscillator") {
    const auto fam = harmonic_oscillator_family(c, 1.0);
    const auto k1 = build_kernel(fam, 0.5, c);
    const auto k2 = build_kernel(fam, 0.9, c);
    const auto k12 = build_kernel(fam, 1.4, c);
    auto mid = apply_kernel_fast(k1, in, grid);
    mid.label = SpaceLabel::Q;
    CHECK(l2_distance(apply_kernel_fast(k2, mid, grid), apply_kernel_fast(k12, in, grid)) <= 1e-5);
  }
}

TEST_CASE("resolution and grid errors") {
  const auto k = build_kernel(free_particle_family(kUnits), 0.05, kUnits);
  // Kernel chirp far too fast for dQ = 0.1.
  const Grid coarse = Grid::centered(256, 0.1);
  CHECK_THROWS_AS(apply_kernel_direct(k, unit_gaussian(coarse), coarse), ResolutionError);

  // Output grid covering only part of the spread packet.
  const auto k1 = build_kernel(free_particle_family(kUnits), 1.0, kUnits);
  const Grid in_grid = Grid::centered(1024, 0.02);
  const Grid narrow = Grid::centered(100, 0.02);
  CHECK_THROWS_AS(apply_kernel_direct(k1, unit_gaussian(in_grid), narrow), GridError);

  const WaveFunction wrong_label = WaveFunction::sample(gaussian_packet(1.0, 0.0, 0.0, kUnits), in_grid);
  CHECK_THROWS_AS(apply_kernel_direct(k1, wrong_label, in_grid), ConfigError);
  const auto pq = build_kernel(SymplecticMatrixd(1, -1, 0, 1), Representation::qP, 1.0, kUnits);
  CHECK_THROWS_AS(apply_kernel_fast(pq, unit_gaussian(in_grid), in_grid), ConfigError);
}

TEST_CASE("kernel and HJ construction differ by one constant") {
  const PhysicalConstants c(0.9, 1.4);
  const auto ho = harmonic_oscillator_family(c, 1.2);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0), time(0.05, 5.0);
  complexd reference(0.0);
  for (int n = 0; n < 50; ++n) {
    const double t = time(rng);
    if (std::abs(ho.at(t).b()) < 1e-2) continue;
    const double q = u(rng), Q = u(rng);
    const auto k = build_kernel(ho.at(t), Representation::qQ, t, c);
    const auto s = assemble_action(ho, t, Q, c);
    const complexd ratio = k(q, Q) / s.wavefunction(q, c.hbar);
    if (reference == 0.0) reference = ratio;
    CHECK(std::abs(ratio / reference - 1.0) <= 1e-10);
  }
  CHECK(std::abs(reference) == doctest::Approx(1.0 / std::sqrt(2.0 * kPi * c.hbar)));
}
