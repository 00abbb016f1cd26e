#pragma once

#include "lct/errors.hpp"

namespace lct {

// hbar and the particle mass. Defaults are natural units.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  PhysicalConstants() = default;
  PhysicalConstants(double hbar_, double mass_) : hbar(hbar_), mass(mass_) {
    if (!(hbar > 0.0) || !(mass > 0.0)) {
      throw ConfigError("hbar and mass must be positive");
    }
  }
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Library-wide default tolerances.
inline constexpr double kDetTol = 1e-12;
inline constexpr double kHJTolAnalytic = 1e-8;
inline constexpr double kHJTolFiniteDiff = 1e-6;
inline constexpr double kSingularFloor = 1e-10;

}  // namespace lct
