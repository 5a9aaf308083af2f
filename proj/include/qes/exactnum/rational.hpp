#pragma once

#include <complex>
#include <optional>
#include <type_traits>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace qes {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

/// 50 significant decimal digits; used wherever floating evaluation must stay
/// far below the size of high-order perturbative terms.
using Real = mp::number<mp::mpfr_float_backend<50>, mp::et_off>;

inline Integer numerator(const Rational& r) { return mp::numerator(r); }
inline Integer denominator(const Rational& r) { return mp::denominator(r); }

/// Checked division: a zero divisor raises ArithmeticError.
Rational divide(const Rational& a, const Rational& b);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Accepts "7", "-3/4", "0.125", "1e-3", "-2.5E+2".
Rational parse_rational(std::string_view text);

/// Exact roots when the argument is a perfect square/cube of a rational.
std::optional<Rational> exact_sqrt(const Rational& r);
std::optional<Rational> exact_cbrt(const Rational& r);

template <class T>
struct is_std_complex : std::false_type {};
template <class T>
struct is_std_complex<std::complex<T>> : std::true_type {};

/// Rational -> scalar conversion used by the templated algorithms.
/// HalfEisenstein provides its own specialization.
template <class To>
To convert(const Rational& r) {
  if constexpr (std::is_same_v<To, double>) {
    return r.convert_to<double>();
  } else if constexpr (is_std_complex<To>::value) {
    return To(r.convert_to<typename To::value_type>());
  } else if constexpr (std::is_same_v<To, Rational>) {
    return r;
  } else {
    return To(numerator(r)) / To(denominator(r));
  }
}

}  // namespace qes
