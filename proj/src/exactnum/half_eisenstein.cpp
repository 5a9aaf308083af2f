#include "qes/exactnum/half_eisenstein.hpp"

#include <cmath>

#include "qes/errors.hpp"

namespace qes {

namespace {

Integer halve_or_throw(const Integer& twice, const char* what) {
  if (mp::bit_test(mp::abs(twice), 0)) {
    throw LatticeError(std::string("half-Eisenstein ") + what + " leaves the lattice");
  }
  return twice / 2;
}

}  // namespace

bool HalfEisenstein::is_eisenstein_integer() const {
  return mp::bit_test(mp::abs(p_), 0) == mp::bit_test(mp::abs(q_), 0);
}

std::complex<double> HalfEisenstein::to_complex() const {
  return {p_.convert_to<double>() / 2.0, q_.convert_to<double>() * std::sqrt(3.0) / 2.0};
}

HalfEisenstein& HalfEisenstein::operator+=(const HalfEisenstein& o) {
  p_ += o.p_;
  q_ += o.q_;
  return *this;
}

HalfEisenstein& HalfEisenstein::operator-=(const HalfEisenstein& o) {
  p_ -= o.p_;
  q_ -= o.q_;
  return *this;
}

HalfEisenstein& HalfEisenstein::operator*=(const HalfEisenstein& o) {
  // (p1 + q1√-3)(p2 + q2√-3)/4 = ((p1p2 - 3q1q2) + (p1q2 + p2q1)√-3)/4
  Integer p = halve_or_throw(Integer(p_ * o.p_ - 3 * q_ * o.q_), "product");
  Integer q = halve_or_throw(Integer(p_ * o.q_ + o.p_ * q_), "product");
  p_ = std::move(p);
  q_ = std::move(q);
  return *this;
}

std::strong_ordering operator<=>(const HalfEisenstein& a, const HalfEisenstein& b) {
  if (a.p_ != b.p_) return a.p_ < b.p_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.q_ != b.q_) return a.q_ < b.q_ ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string HalfEisenstein::str() const {
  return "(" + p_.str() + (q_ < 0 ? " - " : " + ") + Integer(mp::abs(q_)).str() + "√3 i)/2";
}

HalfEisenstein eisenstein_mul(const HalfEisenstein& a, const HalfEisenstein& b) { return a * b; }

HalfEisenstein exact_div(const HalfEisenstein& a, const HalfEisenstein& b) {
  const Integer n = b.norm4();
  if (n == 0) throw ArithmeticError("half-Eisenstein division by zero");
  // a / b = a·conj(b) / |b|², with |b|² = n/4.
  const Integer p_num = 2 * (a.p() * b.p() + 3 * a.q() * b.q());
  const Integer q_num = 2 * (b.p() * a.q() - a.p() * b.q());
  if (p_num % n != 0 || q_num % n != 0) throw LatticeError("half-Eisenstein quotient leaves the lattice");
  return {Integer(p_num / n), Integer(q_num / n)};
}

template <>
HalfEisenstein convert<HalfEisenstein>(const Rational& r) {
  // Half-integers are representable as (2r, 0).
  const Rational twice = 2 * r;
  if (denominator(twice) != 1) throw LatticeError("rational " + to_string(r) + " is not on the half-integer lattice");
  return {numerator(twice), Integer(0)};
}

}  // namespace qes
