#pragma once

#include <complex>
#include <functional>

#include "lct/constants.hpp"
#include "lct/families.hpp"
#include "lct/generating_function.hpp"
#include "lct/potential.hpp"

namespace lct {

using complexd = std::complex<double>;

// S(q) = qq q^2 + q1 q + q0 at a fixed time and fixed new coordinate Q.
// psi = exp(i S / hbar).
struct QuantumAction {
  complexd qq;
  complexd q1;
  complexd q0;
  double evaluated_at = 0.0;
  double parameter_Q = 0.0;

  complexd operator()(double q) const { return (qq * q + q1) * q + q0; }
  complexd d_q(double q) const { return 2.0 * qq * q + q1; }
  complexd d_qq() const { return 2.0 * qq; }

  complexd wavefunction(double q, double hbar) const {
    return std::exp(complexd(0.0, 1.0) * (*this)(q) / hbar);
  }
};

// An action as a function of time, for residuals that need dS/dt.
using ActionFamily = std::function<QuantumAction(double)>;

// (1/2m)(dW1/dq)^2 + V(q) + dW1/dt at (t, q, Q).
double classical_hj_residual(const TransformFamily& family, const QuadraticPotential& potential,
                             double t, double q, double Q, const PhysicalConstants& constants);

// F = (1/2m) d^2 W1 / dq^2 = -a / (2 m b). Equal to b'/(2b) on compatible
// families.
double compute_F(const TransformFamily& family, double t, const PhysicalConstants& constants);

// ln sqrt(b) on the principal branch: ln sqrt|b| + i pi/2 [b < 0].
complexd log_sqrt(double b);

enum class ActionTerms {
  full,          // W1 + i hbar ln sqrt(b)
  classical_only // W1 alone; drops the amplitude term
};

// Runs the construction: W1 solves the classical HJ equation, F follows from
// its curvature, and S = W1 + i hbar int F dt with int F dt = ln sqrt(b).
// Throws HJIncompatible if a(t) != -m b'(t).
QuantumAction assemble_action(const TransformFamily& family, double t, double Q,
                              const PhysicalConstants& constants,
                              ActionTerms terms = ActionTerms::full);

ActionFamily action_family(const TransformFamily& family, double Q,
                           const PhysicalConstants& constants,
                           ActionTerms terms = ActionTerms::full);

// (1/2m)(dS/dq)^2 + V + dS/dt - (i hbar / 2m) d^2S/dq^2. Spatial derivatives
// are exact; dS/dt is a fourth-order central difference with h = 1e-5 max(1, |t|).
complexd quantum_residual(const ActionFamily& action, const QuadraticPotential& potential,
                          double t, double q, const PhysicalConstants& constants);

// psi = (1/sqrt(b)) exp(i W1 / hbar), evaluated directly from the matrix.
complexd hj_wavefunction(const TransformFamily& family, double t, double q, double Q,
                         const PhysicalConstants& constants);

}  // namespace lct
