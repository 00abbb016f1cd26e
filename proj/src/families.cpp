#include "lct/families.hpp"

#include <cmath>
#include <sstream>

namespace lct {

double default_time_step(double t) { return 1e-5 * std::max(1.0, std::abs(t)); }

SymplecticMatrixd finite_difference_rate(const TransformFamily& family, double t, double h) {
  const auto plus = family.at(t + h).matrix();
  const auto minus = family.at(t - h).matrix();
  return SymplecticMatrixd(Eigen::Matrix2d((plus - minus) / (2.0 * h)));
}

SymplecticMatrixd TransformFamily::derivative(double t) const {
  if (rate) return rate(t);
  return finite_difference_rate(*this, t, default_time_step(t));
}

bool TransformFamily::is_singular(double t) const {
  if (singular) return singular(t);
  return !(std::abs(at(t).b()) > kSingularFloor);
}

void TransformFamily::require_regular(double t) const {
  if (is_singular(t)) {
    std::ostringstream os;
    os << "t = " << t << " is a singular time of family '" << label << "'";
    throw DomainError(os.str());
  }
}

TransformFamily free_particle_family(const PhysicalConstants& constants) {
  const double m = constants.mass;
  TransformFamily f;
  f.label = "free";
  f.evaluate = [m](double t) { return SymplecticMatrixd(1.0, -t / m, 0.0, 1.0); };
  f.rate = [m](double) { return SymplecticMatrixd(0.0, -1.0 / m, 0.0, 0.0); };
  f.singular = [m](double t) { return !(std::abs(t / m) > kSingularFloor); };
  return f;
}

TransformFamily harmonic_oscillator_family(const PhysicalConstants& constants, double omega) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  const double m = constants.mass;
  TransformFamily f;
  f.label = "harmonic";
  f.evaluate = [m, omega](double t) {
    const double s = std::sin(omega * t), c = std::cos(omega * t);
    return SymplecticMatrixd(c, -s / (m * omega), m * omega * s, c);
  };
  f.rate = [m, omega](double t) {
    const double s = std::sin(omega * t), c = std::cos(omega * t);
    return SymplecticMatrixd(-omega * s, -c / m, m * omega * omega * c, -omega * s);
  };
  f.singular = [m, omega](double t) {
    return !(std::abs(std::sin(omega * t) / (m * omega)) > kSingularFloor);
  };
  return f;
}

HJCompatibility hj_compatibility(const TransformFamily& family, double t,
                                 const PhysicalConstants& constants, std::optional<double> tol) {
  family.require_regular(t);
  const double a = family.at(t).a();
  const double b_dot = family.derivative(t).b();
  const double residual = std::abs(a + constants.mass * b_dot);
  const double limit =
      tol.value_or(family.has_analytic_rate() ? kHJTolAnalytic : kHJTolFiniteDiff);
  return {residual, residual <= limit};
}

CausticCount count_caustics(const TransformFamily& family, double t, int samples) {
  CausticCount out;
  if (samples < 2) samples = 2;
  auto sign = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };
  const double dt = t / samples;
  int previous = sign(family.at(dt * 1e-3).b());
  out.initial_sign = previous == 0 ? -1 : previous;
  for (int k = 1; k <= samples; ++k) {
    const int s = sign(family.at(dt * k).b());
    if (s != 0 && previous != 0 && s != previous) ++out.crossings;
    if (s != 0) previous = s;
  }
  return out;
}

}  // namespace lct
