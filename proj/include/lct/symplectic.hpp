#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "lct/constants.hpp"
#include "lct/errors.hpp"

namespace lct {

// A linear canonical transformation of one degree of freedom,
//
//   Q = a q + b p
//   P = c q + d p,
//
// stored as the 2x2 matrix [[a, b], [c, d]]. Canonical iff ad - bc = 1.
template <typename Scalar>
class SymplecticMatrix {
 public:
  using Matrix = Eigen::Matrix<Scalar, 2, 2>;
  using Vector = Eigen::Matrix<Scalar, 2, 1>;

  SymplecticMatrix() : m_(Matrix::Identity()) {}
  SymplecticMatrix(Scalar a, Scalar b, Scalar c, Scalar d) { m_ << a, b, c, d; }
  explicit SymplecticMatrix(const Matrix& m) : m_(m) {}

  static SymplecticMatrix Identity() { return SymplecticMatrix(); }

  Scalar a() const { return m_(0, 0); }
  Scalar b() const { return m_(0, 1); }
  Scalar c() const { return m_(1, 0); }
  Scalar d() const { return m_(1, 1); }

  Scalar determinant() const { return a() * d() - b() * c(); }

  const Matrix& matrix() const { return m_; }

  // (q, p) -> (Q, P).
  Vector operator()(const Vector& qp) const { return m_ * qp; }
  Vector operator()(Scalar q, Scalar p) const { return m_ * Vector(q, p); }

  bool isApprox(const SymplecticMatrix& other, Scalar tol) const {
    return ((m_ - other.m_).cwiseAbs().maxCoeff() <= tol);
  }

  template <typename NewScalar>
  SymplecticMatrix<NewScalar> cast() const {
    return SymplecticMatrix<NewScalar>(m_.template cast<NewScalar>());
  }

 private:
  Matrix m_;
};

using SymplecticMatrixd = SymplecticMatrix<double>;

template <typename Scalar>
struct ValidationReport {
  Scalar det_error;
  bool ok;
};

// Never throws.
template <typename Scalar>
ValidationReport<Scalar> validate(const SymplecticMatrix<Scalar>& m,
                                  Scalar det_tol = Scalar(kDetTol)) {
  using std::abs;
  const Scalar err = abs(m.determinant() - Scalar(1));
  return {err, err <= det_tol};
}

namespace detail {
template <typename Scalar>
void require_valid(const SymplecticMatrix<Scalar>& m, const char* what,
                   Scalar det_tol) {
  const auto report = validate(m, det_tol);
  if (!report.ok) {
    throw InvalidTransform(std::string(what) +
                           ": matrix is not symplectic, |ad - bc - 1| = " +
                           std::to_string(static_cast<double>(report.det_error)));
  }
}
}  // namespace detail

// m2 after m1.
template <typename Scalar>
SymplecticMatrix<Scalar> compose(const SymplecticMatrix<Scalar>& m2,
                                 const SymplecticMatrix<Scalar>& m1,
                                 Scalar det_tol = Scalar(kDetTol)) {
  detail::require_valid(m2, "compose", det_tol);
  detail::require_valid(m1, "compose", det_tol);
  return SymplecticMatrix<Scalar>(m2.matrix() * m1.matrix());
}

template <typename Scalar>
SymplecticMatrix<Scalar> operator*(const SymplecticMatrix<Scalar>& m2,
                                   const SymplecticMatrix<Scalar>& m1) {
  return compose(m2, m1);
}

// Unit determinant makes the inverse the adjugate.
template <typename Scalar>
SymplecticMatrix<Scalar> inverse(const SymplecticMatrix<Scalar>& m,
                                 Scalar det_tol = Scalar(kDetTol)) {
  detail::require_valid(m, "inverse", det_tol);
  return SymplecticMatrix<Scalar>(m.d(), -m.b(), -m.c(), m.a());
}

}  // namespace lct
