#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace lct {

// Base of every error raised by the library. The CLI maps each subclass to a
// fixed exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that violates ad - bc = 1 was handed to an operation that needs a
// canonical transformation.
class InvalidTransform : public Error {
 public:
  using Error::Error;
};

// The coefficient that a representation divides by is (numerically) zero,
// e.g. b = 0 for the position-position kernel at a caustic.
class SingularRepresentation : public Error {
 public:
  SingularRepresentation(const std::string& coefficient, double value)
      : Error(coefficient + "(t)=0 (caustic): |" + coefficient + "| = " + format(value) +
              " is below the singularity floor"),
        coefficient_(coefficient) {}

  const std::string& coefficient() const { return coefficient_; }

 private:
  static std::string format(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", std::abs(value));
    return buf;
  }

  std::string coefficient_;
};

// A time outside the domain of a transform family (a declared singular time).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The family does not satisfy a(t) = -m b'(t), so W1 does not solve the
// Hamilton-Jacobi equation.
class HJIncompatible : public Error {
 public:
  using Error::Error;
};

// Sampling is too coarse for the oscillation of the integrand or the time
// step breaks the accuracy guard.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// The grid does not hold the state: norm lost off the edge or the wave
// reached the hard wall.
class GridError : public Error {
 public:
  using Error::Error;
};

// Malformed input: configuration, expressions, files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lct
