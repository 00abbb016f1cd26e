#pragma once

#include <cmath>

#include "lct/errors.hpp"

namespace lct {

// V(q) = k0 + k1 q + k2 q^2. Only quadratic potentials keep the action
// quadratic in q, which the whole construction relies on.
struct QuadraticPotential {
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;

  QuadraticPotential() = default;
  QuadraticPotential(double k0_, double k1_, double k2_) : k0(k0_), k1(k1_), k2(k2_) {
    if (!std::isfinite(k0) || !std::isfinite(k1) || !std::isfinite(k2)) {
      throw ConfigError("potential coefficients must be finite");
    }
  }

  static QuadraticPotential free() { return {}; }
  static QuadraticPotential harmonic(double mass, double omega) {
    return {0.0, 0.0, 0.5 * mass * omega * omega};
  }

  double operator()(double q) const { return k0 + (k1 + k2 * q) * q; }

  bool operator==(const QuadraticPotential&) const = default;
};

}  // namespace lct
