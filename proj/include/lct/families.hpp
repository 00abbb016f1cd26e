#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lct/constants.hpp"
#include "lct/symplectic.hpp"

namespace lct {

// A time-dependent linear canonical transformation t -> (a, b, c, d)(t).
//
// `rate` optionally supplies the analytic derivatives (a', b', c', d'). When
// it is absent, derivatives come from central differences with step
// h = 1e-5 * max(1, |t|).
//
// `singular` reports times outside the family's domain: by default, times
// where |b(t)| is below the singularity floor, i.e. where W1 and the
// position-space kernel do not exist.
struct TransformFamily {
  std::function<SymplecticMatrixd(double)> evaluate;
  std::function<SymplecticMatrixd(double)> rate;
  std::function<bool(double)> singular;
  std::string label;

  SymplecticMatrixd at(double t) const { return evaluate(t); }

  bool has_analytic_rate() const { return static_cast<bool>(rate); }

  // Coefficient time derivatives, analytic if available.
  SymplecticMatrixd derivative(double t) const;

  bool is_singular(double t) const;

  // Throws DomainError if t is singular.
  void require_regular(double t) const;
};

// Central difference of the coefficients with an explicit step.
SymplecticMatrixd finite_difference_rate(const TransformFamily& family, double t, double h);

double default_time_step(double t);

// Q = q - t p / m, P = p. The Galilean transformation.
TransformFamily free_particle_family(const PhysicalConstants& constants);

// Phase-space rotation for H = p^2/2m + m w^2 q^2 / 2:
//   [[cos wt, -sin wt/(m w)], [m w sin wt, cos wt]].
TransformFamily harmonic_oscillator_family(const PhysicalConstants& constants, double omega);

struct HJCompatibility {
  double residual;
  bool ok;
};

// |a(t) + m b'(t)|, compared to 1e-8 for analytic derivatives or 1e-6 for
// finite differences unless an explicit tolerance is given.
HJCompatibility hj_compatibility(const TransformFamily& family, double t,
                                 const PhysicalConstants& constants,
                                 std::optional<double> tol = std::nullopt);

// Number of sign changes of b on (0, t], found by sampling, and the sign of b
// just after t = 0. Used to continue the kernel prefactor through caustics.
struct CausticCount {
  int crossings = 0;
  int initial_sign = -1;
};

CausticCount count_caustics(const TransformFamily& family, double t, int samples = 4096);

}  // namespace lct
