#include "qes/exactnum/rational.hpp"

#include <cctype>

#include "qes/errors.hpp"

namespace qes {

Rational divide(const Rational& a, const Rational& b) {
  if (b == 0) throw ArithmeticError("rational division by zero");
  return a / b;
}

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw UsageError("malformed number: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw UsageError("malformed number: '" + std::string(whole) + "'");
    }
  }
  // Leading zeros would make GMP read the digits as octal.
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

Integer pow10(long e) {
  Integer p = 1;
  for (long i = 0; i < e; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw UsageError("empty number");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer n = parse_integer(text.substr(0, slash), whole);
    Integer d = parse_integer(text.substr(slash + 1), whole);
    if (d == 0) throw ArithmeticError("zero denominator in '" + std::string(whole) + "'");
    value = Rational(n, d);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      exponent = parse_integer(exp_text, whole).convert_to<long>();
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw UsageError("malformed number: '" + std::string(whole) + "'");
    Integer mantissa = parse_integer(std::string(int_part) + std::string(frac_part), whole);
    exponent -= static_cast<long>(frac_part.size());
    value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

namespace {

std::optional<Integer> integer_root(const Integer& z, unsigned long k) {
  if (z < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = integer_root(Integer(-z), k);
    if (!r) return std::nullopt;
    return Integer(-*r);
  }
  Integer root;
  int exact = mpz_root(root.backend().data(), z.backend().data(), k);
  if (!exact) return std::nullopt;
  return root;
}

std::optional<Rational> rational_root(const Rational& r, unsigned long k) {
  auto n = integer_root(numerator(r), k);
  auto d = integer_root(denominator(r), k);
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& r) { return rational_root(r, 2); }
std::optional<Rational> exact_cbrt(const Rational& r) { return rational_root(r, 3); }

}  // namespace qes
