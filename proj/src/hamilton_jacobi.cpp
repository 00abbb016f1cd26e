#include "lct/hamilton_jacobi.hpp"

#include <cmath>
#include <sstream>

namespace lct {

namespace {

QuadraticGeneratingFunctiond w1_at(const TransformFamily& family, double t) {
  family.require_regular(t);
  return w1_from_matrix(family.at(t));
}

}  // namespace

double classical_hj_residual(const TransformFamily& family, const QuadraticPotential& potential,
                             double t, double q, double Q, const PhysicalConstants& constants) {
  const auto m = family.at(t);
  const auto w = w1_at(family, t);
  const auto rate = family.derivative(t);

  const double a = m.a(), b = m.b(), d = m.d();
  const double b2 = b * b;
  // Time derivative of qQ/b - a q^2/(2b) - d Q^2/(2b) at fixed (q, Q).
  const double dw_dt = -q * Q * rate.b() / b2 -
                       q * q * (rate.a() * b - a * rate.b()) / (2.0 * b2) -
                       Q * Q * (rate.d() * b - d * rate.b()) / (2.0 * b2);
  const double p = w.d_first(q, Q);
  return p * p / (2.0 * constants.mass) + potential(q) + dw_dt;
}

double compute_F(const TransformFamily& family, double t, const PhysicalConstants& constants) {
  const auto w = w1_at(family, t);
  return 2.0 * w.xx / (2.0 * constants.mass);
}

complexd log_sqrt(double b) {
  return {0.5 * std::log(std::abs(b)), b < 0.0 ? 0.5 * kPi : 0.0};
}

QuantumAction assemble_action(const TransformFamily& family, double t, double Q,
                              const PhysicalConstants& constants, ActionTerms terms) {
  const auto w = w1_at(family, t);
  const auto compat = hj_compatibility(family, t, constants);
  if (!compat.ok) {
    std::ostringstream os;
    os << "family '" << family.label << "' violates a(t) = -m b'(t) at t = " << t
       << " (residual " << compat.residual << ")";
    throw HJIncompatible(os.str());
  }
  QuantumAction s;
  s.evaluated_at = t;
  s.parameter_Q = Q;
  s.qq = w.xx;
  s.q1 = w.cross * Q;
  s.q0 = w.yy * Q * Q;
  if (terms == ActionTerms::full) {
    s.q0 += complexd(0.0, constants.hbar) * log_sqrt(family.at(t).b());
  }
  return s;
}

ActionFamily action_family(const TransformFamily& family, double Q,
                           const PhysicalConstants& constants, ActionTerms terms) {
  return [family, Q, constants, terms](double t) {
    return assemble_action(family, t, Q, constants, terms);
  };
}

complexd quantum_residual(const ActionFamily& action, const QuadraticPotential& potential,
                          double t, double q, const PhysicalConstants& constants) {
  const double h = default_time_step(t);
  const QuantumAction s = action(t);
  // Fourth-order central stencil.
  const complexd ds_dt = (8.0 * (action(t + h)(q) - action(t - h)(q)) -
                          (action(t + 2.0 * h)(q) - action(t - 2.0 * h)(q))) /
                         (12.0 * h);
  const complexd ds_dq = s.d_q(q);
  const double m = constants.mass;
  return ds_dq * ds_dq / (2.0 * m) + potential(q) + ds_dt -
         complexd(0.0, constants.hbar / (2.0 * m)) * s.d_qq();
}

complexd hj_wavefunction(const TransformFamily& family, double t, double q, double Q,
                         const PhysicalConstants& constants) {
  const auto w = w1_at(family, t);
  const double b = family.at(t).b();
  return std::exp(complexd(0.0, w(q, Q) / constants.hbar)) / std::sqrt(complexd(b, 0.0));
}

}  // namespace lct
