#pragma once

#include <map>
#include <string>
#include <utility>

#include "qes/exactnum/rational.hpp"

namespace qes {

/// Sparse polynomial in the two formal perturbation symbols b and g with
/// Rational coefficients. Keys are (degree in b, degree in g); zero
/// coefficients are never stored.
class BivariatePoly {
 public:
  using Exponents = std::pair<int, int>;
  using Terms = std::map<Exponents, Rational>;

  BivariatePoly() = default;
  BivariatePoly(const Rational& constant);  // NOLINT: implicit, acts as a scalar
  BivariatePoly(long constant) : BivariatePoly(Rational(constant)) {}  // NOLINT
  BivariatePoly(int constant) : BivariatePoly(Rational(constant)) {}   // NOLINT

  static BivariatePoly b();
  static BivariatePoly g();
  static BivariatePoly term(const Rational& c, int deg_b, int deg_g);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coefficient(int deg_b, int deg_g) const;
  /// Constant term.
  Rational constant() const { return coefficient(0, 0); }
  /// Largest deg_b + deg_g over stored terms, -1 for the zero polynomial.
  int total_degree() const;

  BivariatePoly operator-() const;
  BivariatePoly& operator+=(const BivariatePoly& o);
  BivariatePoly& operator-=(const BivariatePoly& o);
  BivariatePoly& operator*=(const BivariatePoly& o);
  BivariatePoly& operator*=(const Rational& c);
  /// Division by a nonzero rational; ArithmeticError on zero.
  BivariatePoly& operator/=(const Rational& c);

  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& o) { return a += o; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& o) { return a -= o; }
  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& o) { BivariatePoly r = a; return r *= o; }
  friend BivariatePoly operator*(BivariatePoly a, const Rational& c) { return a *= c; }
  friend BivariatePoly operator*(const Rational& c, BivariatePoly a) { return a *= c; }
  friend BivariatePoly operator/(BivariatePoly a, const Rational& c) { return a /= c; }
  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

  /// Exact or floating substitution b -> b_val, g -> g_val.
  template <class Scalar>
  Scalar evaluate(const Scalar& b_val, const Scalar& g_val) const;

  /// Human-readable form, e.g. "1/3*b + 1/3*g".
  std::string str() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  Terms terms_;
};

Rational bipoly_eval(const BivariatePoly& poly, const Rational& b_val, const Rational& g_val);

template <class Scalar>
Scalar BivariatePoly::evaluate(const Scalar& b_val, const Scalar& g_val) const {
  Scalar acc = Scalar(0);
  for (const auto& [e, c] : terms_) {
    Scalar term = convert<Scalar>(c);
    for (int i = 0; i < e.first; ++i) term *= b_val;
    for (int i = 0; i < e.second; ++i) term *= g_val;
    acc += term;
  }
  return acc;
}

}  // namespace qes
