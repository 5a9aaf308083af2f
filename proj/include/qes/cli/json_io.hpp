#pragma once

// JSON encodings shared by the command-line front end. Rationals travel as
// {"num": "...", "den": "..."} decimal strings, polynomials in (b, g) as
// term lists, lattice values by their doubled coordinates.

#include <string>

#include <json.hpp>

#include "qes/dense.hpp"
#include "qes/exactnum/bivariate_poly.hpp"
#include "qes/exactnum/half_eisenstein.hpp"
#include "qes/exactnum/rational.hpp"
#include "qes/perturb.hpp"
#include "qes/zeroorder.hpp"

namespace qes::cli {

using nlohmann::json;

json to_json(const Rational& q);
Rational rational_from_json(const json& j);

/// [{"b": i, "g": j, "coeff": {...}}, ...] in ascending (i, j) order.
json to_json(const BivariatePoly& p);
BivariatePoly bipoly_from_json(const json& j);

/// {"p": "...", "q": "..."} for (p + q√3 i)/2.
json to_json(const HalfEisenstein& z);
HalfEisenstein half_eisenstein_from_json(const json& j);

json to_json(const RootPair& r);

json to_json(const Vector<Rational>& v);
Vector<Rational> rational_vector_from_json(const json& j);
json to_json(const Vector<BivariatePoly>& v);
Vector<BivariatePoly> bipoly_vector_from_json(const json& j);

json to_json(const LeftNullPair& pair);

/// Keys N, n, order, gauge, s0, t0, s_corr, t_corr, u_corr.
json to_json(const PerturbationSeries& series);
/// Inverse of to_json for the stored corrections; the left pair is not
/// serialized and comes back empty.
PerturbationSeries series_from_json(const json& j);

/// Decimal string with `digits` significant digits.
std::string format_real(const Real& x, int digits);

}  // namespace qes::cli
