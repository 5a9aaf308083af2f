#pragma once

#include <complex>
#include <compare>
#include <string>

#include "qes/exactnum/rational.hpp"

namespace qes {

/// z = (p + q·√3·i) / 2 with integer p, q.
///
/// The doubled coordinates are stored directly: p = 2·Re z and
/// q = 2·Im z / √3. Values with p ≡ q (mod 2) form the Eisenstein integers
/// Z[ω], a ring; multiplication and exact division reject any result whose
/// coordinates are not integers with LatticeError.
class HalfEisenstein {
 public:
  HalfEisenstein() = default;
  HalfEisenstein(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {}
  /// The rational integer n, so that generic code can write Scalar(0).
  explicit HalfEisenstein(int n) : p_(2 * n), q_(0) {}

  /// The rational integer n, stored as (2n, 0).
  static HalfEisenstein from_integer(const Integer& n) { return {Integer(2 * n), Integer(0)}; }
  static HalfEisenstein from_integer(long n) { return from_integer(Integer(n)); }

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }

  bool is_real() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  /// p ≡ q (mod 2): the value is an Eisenstein integer.
  bool is_eisenstein_integer() const;

  HalfEisenstein conj() const { return {p_, Integer(-q_)}; }

  /// 4·|z|² = p² + 3q², always an integer.
  Integer norm4() const { return p_ * p_ + 3 * q_ * q_; }

  /// Re z as an exact rational. Only meaningful for the real part.
  Rational real_part() const { return Rational(p_, 2); }

  std::complex<double> to_complex() const;

  HalfEisenstein operator-() const { return {Integer(-p_), Integer(-q_)}; }
  HalfEisenstein& operator+=(const HalfEisenstein& o);
  HalfEisenstein& operator-=(const HalfEisenstein& o);
  HalfEisenstein& operator*=(const HalfEisenstein& o);

  friend HalfEisenstein operator+(HalfEisenstein a, const HalfEisenstein& b) { return a += b; }
  friend HalfEisenstein operator-(HalfEisenstein a, const HalfEisenstein& b) { return a -= b; }
  friend HalfEisenstein operator*(HalfEisenstein a, const HalfEisenstein& b) { return a *= b; }
  friend HalfEisenstein operator*(const Integer& k, const HalfEisenstein& z) { return {Integer(k * z.p_), Integer(k * z.q_)}; }

  friend bool operator==(const HalfEisenstein& a, const HalfEisenstein& b) = default;
  /// Lexicographic on (p, q); used only for deterministic ordering.
  friend std::strong_ordering operator<=>(const HalfEisenstein& a, const HalfEisenstein& b);

  std::string str() const;

 private:
  Integer p_{0};
  Integer q_{0};
};

/// Exact complex product; throws LatticeError when the product leaves the
/// half-integer lattice.
HalfEisenstein eisenstein_mul(const HalfEisenstein& a, const HalfEisenstein& b);

/// a / b when the quotient lies on the lattice. Zero divisor raises
/// ArithmeticError, a non-lattice quotient raises LatticeError.
HalfEisenstein exact_div(const HalfEisenstein& a, const HalfEisenstein& b);

/// Integer-valued rationals only; anything else raises LatticeError.
template <>
HalfEisenstein convert<HalfEisenstein>(const Rational& r);

}  // namespace qes
