#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "qes/errors.hpp"
#include "qes/exactnum/bivariate_poly.hpp"
#include "qes/exactnum/half_eisenstein.hpp"
#include "qes/exactnum/rational.hpp"
#include "qes/exactnum/unipoly.hpp"

using namespace qes;

TEST_CASE("rational arithmetic is exact and reduced") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  const Rational half(2, 4);
  CHECK(numerator(half) == 1);
  CHECK(denominator(half) == 2);
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(7)) == "7");
  CHECK_THROWS_AS(divide(Rational(1), Rational(0)), ArithmeticError);
}

TEST_CASE("parse_rational reads integers, fractions and decimals exactly") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("-2.5E+2") == -250);
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("exact roots") {
  CHECK(exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(exact_sqrt(Rational(2)).has_value());
  CHECK_FALSE(exact_sqrt(Rational(-4)).has_value());
  CHECK(exact_cbrt(Rational(64)) == 4);
  CHECK(exact_cbrt(Rational(-27, 8)) == Rational(-3, 2));
  CHECK_FALSE(exact_cbrt(Rational(4)).has_value());
}

TEST_CASE("half-Eisenstein products") {
  const HalfEisenstein one(Integer(2), Integer(0));
  CHECK(eisenstein_mul(one, one) == one);

  const HalfEisenstein w(Integer(-1), Integer(1));  // (-1 + √3 i)/2
  CHECK(eisenstein_mul(w, w) == HalfEisenstein(Integer(-1), Integer(-1)));
  CHECK(eisenstein_mul(w, w) == w.conj());
  CHECK(eisenstein_mul(eisenstein_mul(w, w), w) == one);

  const HalfEisenstein z(Integer(1), Integer(1));  // e^{iπ/3}
  const HalfEisenstein z3 = z * z * z;
  CHECK(z3 == HalfEisenstein(Integer(-2), Integer(0)));
  const auto c = std::pow(std::complex<double>(0.5, std::sqrt(3.0) / 2), 3);
  CHECK(z3.to_complex().real() == doctest::Approx(c.real()));
  CHECK(z3.to_complex().imag() == doctest::Approx(c.imag()).epsilon(1e-12));
}

TEST_CASE("half-Eisenstein lattice errors") {
  const HalfEisenstein half(Integer(1), Integer(0));  // 1/2, not an Eisenstein integer
  CHECK_FALSE(half.is_eisenstein_integer());
  CHECK_THROWS_AS(half * half, LatticeError);
  CHECK_THROWS_AS(exact_div(HalfEisenstein::from_integer(1), HalfEisenstein::from_integer(0)), ArithmeticError);
  CHECK_THROWS_AS(exact_div(HalfEisenstein::from_integer(1), HalfEisenstein::from_integer(3)), LatticeError);
  const HalfEisenstein a(Integer(3), Integer(1)), b(Integer(-1), Integer(1));
  CHECK(exact_div(a * b, b) == a);
  CHECK_THROWS_AS(convert<HalfEisenstein>(Rational(1, 3)), LatticeError);
  CHECK(convert<HalfEisenstein>(Rational(-3, 2)) == HalfEisenstein(Integer(-3), Integer(0)));
}

TEST_CASE("half-Eisenstein ring properties on random lattice values") {
  oracle::Gen gen(11);
  for (int i = 0; i < 300; ++i) {
    auto draw = [&] {
      const long q = gen.integer(-9, 9);
      long p = gen.integer(-9, 9);
      if ((p - q) % 2 != 0) ++p;
      return HalfEisenstein(Integer(p), Integer(q));
    };
    const HalfEisenstein x = draw(), y = draw(), z = draw();
    CHECK(x.is_eisenstein_integer());
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    CHECK((x + x.conj()).is_real());
    CHECK((x * x.conj()).is_real());
    CHECK((x * x.conj()).p() == x.norm4() / 2);
    const auto prod = x.to_complex() * y.to_complex();
    CHECK(std::abs((x * y).to_complex() - prod) < 1e-9);
  }
}

TEST_CASE("unipoly arithmetic and multiplicity") {
  const UniPoly p{1, -1};
  const UniPoly q = pow(p, 3) * pow(UniPoly{1, 1, 1}, 2);
  CHECK(q.degree() == 7);
  CHECK(q.multiplicity(1) == 3);
  CHECK(q.multiplicity(-1) == 0);
  Rational rem;
  const UniPoly quotient = UniPoly{-1, 0, 1}.divide_linear(1, rem);
  CHECK(rem == 0);
  CHECK(quotient == UniPoly{1, 1});
  CHECK(UniPoly{1, -2, 1}(Rational(3)) == 4);
  CHECK((UniPoly{1, 2} - UniPoly{1, 2}).is_zero());
  CHECK(UniPoly().degree() == -1);
}

TEST_CASE("bivariate polynomial evaluation") {
  const auto b = BivariatePoly::b(), g = BivariatePoly::g();
  const BivariatePoly s1 = (b + g) / Rational(3);
  CHECK(bipoly_eval(s1, 1, 2) == 1);
  CHECK(bipoly_eval(BivariatePoly(), 5, 7) == 0);
  CHECK(bipoly_eval((Rational(2) * b - g) / Rational(3), 0, 0) == 0);
  CHECK((Rational(-3) * g / Rational(3) + g).is_zero());
  CHECK(s1.str() == "1/3*b + 1/3*g");
  CHECK((b * g * g).total_degree() == 3);
  CHECK(BivariatePoly().total_degree() == -1);
  CHECK_THROWS_AS(s1 / Rational(0), ArithmeticError);
  CHECK(s1.evaluate<double>(1.0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("bivariate arithmetic commutes with evaluation") {
  oracle::Gen gen(5);
  for (int i = 0; i < 200; ++i) {
    const BivariatePoly p = gen.bipoly(), q = gen.bipoly();
    const Rational bv = gen.rational(), gv = gen.rational();
    CHECK(bipoly_eval(p * q, bv, gv) == bipoly_eval(p, bv, gv) * bipoly_eval(q, bv, gv));
    CHECK(bipoly_eval(p + q, bv, gv) == bipoly_eval(p, bv, gv) + bipoly_eval(q, bv, gv));
    CHECK(bipoly_eval(p - q, bv, gv) == bipoly_eval(p, bv, gv) - bipoly_eval(q, bv, gv));
    const BivariatePoly pq = p * q;
    for (const auto& [e, c] : pq.terms()) CHECK(c != 0);
  }
}

TEST_CASE("rational ring axioms on random values") {
  oracle::Gen gen(3);
  for (int i = 0; i < 300; ++i) {
    const Rational x = gen.rational(), y = gen.rational(), z = gen.rational();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(denominator(x) > 0);
    CHECK(boost::multiprecision::gcd(numerator(x), denominator(x)) == 1);
  }
}
