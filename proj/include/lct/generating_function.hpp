#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "lct/constants.hpp"
#include "lct/errors.hpp"
#include "lct/symplectic.hpp"

namespace lct {

// The four classical generating-function types. The first argument is an old
// variable, the second a new one:
//   W1(q, Q)  W2(q, P)  W3(p, Q)  W4(p, P)
enum class GeneratorKind { W1, W2, W3, W4 };

inline const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::W1: return "W1";
    case GeneratorKind::W2: return "W2";
    case GeneratorKind::W3: return "W3";
    case GeneratorKind::W4: return "W4";
  }
  return "?";
}

// Variable names (first, second) carried by each kind.
inline std::pair<char, char> variable_labels(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::W1: return {'q', 'Q'};
    case GeneratorKind::W2: return {'q', 'P'};
    case GeneratorKind::W3: return {'p', 'Q'};
    case GeneratorKind::W4: return {'p', 'P'};
  }
  return {'?', '?'};
}

// W(x, y) = cross * x * y + xx * x^2 + yy * y^2.
template <typename Scalar>
struct QuadraticGeneratingFunction {
  GeneratorKind kind = GeneratorKind::W1;
  Scalar cross = Scalar(0);
  Scalar xx = Scalar(0);
  Scalar yy = Scalar(0);

  Scalar operator()(Scalar x, Scalar y) const {
    return cross * x * y + xx * x * x + yy * y * y;
  }

  Scalar d_first(Scalar x, Scalar y) const { return cross * y + Scalar(2) * xx * x; }
  Scalar d_second(Scalar x, Scalar y) const { return cross * x + Scalar(2) * yy * y; }

  bool operator==(const QuadraticGeneratingFunction&) const = default;
};

using QuadraticGeneratingFunctiond = QuadraticGeneratingFunction<double>;

namespace detail {
template <typename Scalar>
void require_nonzero(Scalar value, const char* name, Scalar floor) {
  using std::abs;
  if (!(abs(value) > floor)) {
    throw SingularRepresentation(name, static_cast<double>(value));
  }
}
}  // namespace detail

// W1 = qQ/b - a q^2/(2b) - d Q^2/(2b).
template <typename Scalar>
QuadraticGeneratingFunction<Scalar> w1_from_matrix(const SymplecticMatrix<Scalar>& m,
                                                   Scalar floor = Scalar(kSingularFloor)) {
  detail::require_nonzero(m.b(), "b", floor);
  return {GeneratorKind::W1, Scalar(1) / m.b(), -m.a() / (Scalar(2) * m.b()),
          -m.d() / (Scalar(2) * m.b())};
}

// W2 = qP/d - c q^2/(2d) + b P^2/(2d).
template <typename Scalar>
QuadraticGeneratingFunction<Scalar> w2_from_matrix(const SymplecticMatrix<Scalar>& m,
                                                   Scalar floor = Scalar(kSingularFloor)) {
  detail::require_nonzero(m.d(), "d", floor);
  return {GeneratorKind::W2, Scalar(1) / m.d(), -m.c() / (Scalar(2) * m.d()),
          m.b() / (Scalar(2) * m.d())};
}

// W3 = -pQ/a + b p^2/(2a) - c Q^2/(2a).
template <typename Scalar>
QuadraticGeneratingFunction<Scalar> w3_from_matrix(const SymplecticMatrix<Scalar>& m,
                                                   Scalar floor = Scalar(kSingularFloor)) {
  detail::require_nonzero(m.a(), "a", floor);
  return {GeneratorKind::W3, Scalar(-1) / m.a(), m.b() / (Scalar(2) * m.a()),
          -m.c() / (Scalar(2) * m.a())};
}

// W4 = -pP/c + d p^2/(2c) + a P^2/(2c).
template <typename Scalar>
QuadraticGeneratingFunction<Scalar> w4_from_matrix(const SymplecticMatrix<Scalar>& m,
                                                   Scalar floor = Scalar(kSingularFloor)) {
  detail::require_nonzero(m.c(), "c", floor);
  return {GeneratorKind::W4, Scalar(-1) / m.c(), m.d() / (Scalar(2) * m.c()),
          m.a() / (Scalar(2) * m.c())};
}

template <typename Scalar>
QuadraticGeneratingFunction<Scalar> generating_function(GeneratorKind kind,
                                                        const SymplecticMatrix<Scalar>& m,
                                                        Scalar floor = Scalar(kSingularFloor)) {
  switch (kind) {
    case GeneratorKind::W1: return w1_from_matrix(m, floor);
    case GeneratorKind::W2: return w2_from_matrix(m, floor);
    case GeneratorKind::W3: return w3_from_matrix(m, floor);
    case GeneratorKind::W4: return w4_from_matrix(m, floor);
  }
  throw ConfigError("unknown generating function kind");
}

// Gradient prescription. Given the generating function's own arguments
// (x, y), returns the two remaining phase-space variables:
//   W1(q,Q) -> (p, P):  p =  dW/dq,  P = -dW/dQ
//   W2(q,P) -> (p, Q):  p =  dW/dq,  Q =  dW/dP
//   W3(p,Q) -> (q, P):  q = -dW/dp,  P = -dW/dQ
//   W4(p,P) -> (q, Q):  q = -dW/dp,  Q =  dW/dP
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> induced_map(const QuadraticGeneratingFunction<Scalar>& w,
                                        Scalar x, Scalar y) {
  const Scalar dx = w.d_first(x, y);
  const Scalar dy = w.d_second(x, y);
  switch (w.kind) {
    case GeneratorKind::W1: return {dx, -dy};
    case GeneratorKind::W2: return {dx, dy};
    case GeneratorKind::W3: return {-dx, -dy};
    case GeneratorKind::W4: return {-dx, dy};
  }
  return {dx, dy};
}

// Inverse of the wK_from_matrix family. The symplectic condition fixes the
// one coefficient the generating function does not carry.
template <typename Scalar>
SymplecticMatrix<Scalar> roundtrip_matrix(const QuadraticGeneratingFunction<Scalar>& w,
                                          Scalar floor = Scalar(kSingularFloor)) {
  using std::abs;
  // cross is 1/b, 1/d, -1/a, -1/c respectively; it can only vanish if the
  // underlying coefficient was infinite.
  detail::require_nonzero(w.cross, "cross", floor);
  const Scalar two(2);
  switch (w.kind) {
    case GeneratorKind::W1: {
      const Scalar b = Scalar(1) / w.cross;
      const Scalar a = -two * w.xx * b;
      const Scalar d = -two * w.yy * b;
      return {a, b, (a * d - Scalar(1)) / b, d};
    }
    case GeneratorKind::W2: {
      const Scalar d = Scalar(1) / w.cross;
      const Scalar c = -two * w.xx * d;
      const Scalar b = two * w.yy * d;
      return {(Scalar(1) + b * c) / d, b, c, d};
    }
    case GeneratorKind::W3: {
      const Scalar a = Scalar(-1) / w.cross;
      const Scalar b = two * w.xx * a;
      const Scalar c = -two * w.yy * a;
      return {a, b, c, (Scalar(1) + b * c) / a};
    }
    case GeneratorKind::W4: {
      const Scalar c = Scalar(-1) / w.cross;
      const Scalar d = two * w.xx * c;
      const Scalar a = two * w.yy * c;
      return {a, (a * d - Scalar(1)) / c, c, d};
    }
  }
  throw ConfigError("unknown generating function kind");
}

}  // namespace lct
