#pragma once

// Exact dense linear algebra over the library's scalar types: fraction-free
// determinants, reduced row echelon forms and null spaces over Rational, and
// integer normalization of rational vectors.

#include <complex>
#include <type_traits>
#include <utility>
#include <vector>

#include "qes/dense.hpp"
#include "qes/errors.hpp"

namespace qes {

template <class T>
inline constexpr bool is_exact_scalar_v =
    std::is_same_v<T, Rational> || std::is_same_v<T, Integer> || std::is_same_v<T, HalfEisenstein>;

inline Rational exact_quotient(const Rational& a, const Rational& b) { return divide(a, b); }
inline HalfEisenstein exact_quotient(const HalfEisenstein& a, const HalfEisenstein& b) { return exact_div(a, b); }
inline Integer exact_quotient(const Integer& a, const Integer& b) {
  if (b == 0) throw ArithmeticError("integer division by zero");
  if (a % b != 0) throw ArithmeticError("inexact integer quotient in fraction-free elimination");
  return a / b;
}

template <class Scalar>
Scalar unit_scalar() {
  if constexpr (std::is_same_v<Scalar, HalfEisenstein>) return HalfEisenstein::from_integer(1);
  else return Scalar(1);
}

inline bool is_zero_scalar(const Rational& x) { return x == 0; }
inline bool is_zero_scalar(const Integer& x) { return x == 0; }
inline bool is_zero_scalar(const HalfEisenstein& x) { return x.is_zero(); }

/// Determinant of a square matrix. Exact scalars use Bareiss fraction-free
/// elimination (every division is exact); floating scalars use partial-pivot LU.
template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) return unit_scalar<Scalar>();
  if constexpr (is_exact_scalar_v<Scalar>) {
    bool negate = false;
    Scalar previous = unit_scalar<Scalar>();
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (is_zero_scalar(m(k, k))) {
        Eigen::Index swap = k + 1;
        while (swap < n && is_zero_scalar(m(swap, k))) ++swap;
        if (swap == n) return Scalar{};
        m.row(k).swap(m.row(swap));
        negate = !negate;
      }
      for (Eigen::Index i = k + 1; i < n; ++i) {
        for (Eigen::Index j = k + 1; j < n; ++j) {
          m(i, j) = exact_quotient(Scalar(m(i, j) * m(k, k) - m(i, k) * m(k, j)), previous);
        }
      }
      previous = m(k, k);
    }
    Scalar d = m(n - 1, n - 1);
    return negate ? Scalar(-d) : d;
  } else {
    return m.partialPivLu().determinant();
  }
}

/// Reduced row echelon form over Rational. Returns the pivot columns.
std::vector<Eigen::Index> rref_in_place(Matrix<Rational>& m);

Eigen::Index rank(Matrix<Rational> m);

/// Basis of {x : m·x = 0}, one column per free variable.
Matrix<Rational> kernel_basis(Matrix<Rational> m);

/// Basis of {v : vᵀ·m = 0}.
inline Matrix<Rational> left_kernel_basis(const Matrix<Rational>& m) { return kernel_basis(m.transpose()); }

/// Rescales v to coprime integers. With `positive_lead`, the first nonzero
/// entry is made positive. The zero vector is returned unchanged.
Vector<Rational> primitive_integer_form(const Vector<Rational>& v, bool positive_lead = true);

template <class Scalar>
Matrix<Scalar> to_scalar_matrix(const Matrix<Rational>& m) {
  Matrix<Scalar> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = convert<Scalar>(m(i, j));
  return out;
}

}  // namespace qes
