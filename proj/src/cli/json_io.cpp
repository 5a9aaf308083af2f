#include "qes/cli/json_io.hpp"

#include <sstream>

#include "qes/errors.hpp"

namespace qes::cli {

namespace {

Integer integer_from_string(const std::string& s) {
  try {
    return Integer(s);
  } catch (const std::exception&) {
    throw UsageError("malformed integer '" + s + "'");
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

}  // namespace

json to_json(const Rational& q) { return {{"num", to_string(numerator(q))}, {"den", to_string(denominator(q))}}; }

Rational rational_from_json(const json& j) {
  const Integer num = integer_from_string(field(j, "num").get<std::string>());
  const Integer den = integer_from_string(field(j, "den").get<std::string>());
  if (den == 0) throw ArithmeticError("zero denominator in JSON rational");
  return Rational(num, den);
}

json to_json(const BivariatePoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"b", e.first}, {"g", e.second}, {"coeff", to_json(c)}});
  return terms;
}

BivariatePoly bipoly_from_json(const json& j) {
  if (!j.is_array()) throw UsageError("polynomial must be a JSON term list");
  BivariatePoly p;
  for (const auto& t : j) {
    p += BivariatePoly::term(rational_from_json(field(t, "coeff")), field(t, "b").get<int>(), field(t, "g").get<int>());
  }
  return p;
}

json to_json(const HalfEisenstein& z) { return {{"p", to_string(z.p())}, {"q", to_string(z.q())}}; }

HalfEisenstein half_eisenstein_from_json(const json& j) {
  return {integer_from_string(field(j, "p").get<std::string>()), integer_from_string(field(j, "q").get<std::string>())};
}

json to_json(const RootPair& r) {
  json j = {{"N", r.N}, {"s", to_json(r.s)}, {"t", to_json(r.t)}, {"real", r.is_real()}};
  j["branch"] = r.branch ? json(*r.branch) : json(nullptr);
  return j;
}

json to_json(const Vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Vector<Rational> rational_vector_from_json(const json& j) {
  Vector<Rational> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i]);
  return v;
}

json to_json(const Vector<BivariatePoly>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Vector<BivariatePoly> bipoly_vector_from_json(const json& j) {
  Vector<BivariatePoly> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = bipoly_from_json(j[i]);
  return v;
}

json to_json(const LeftNullPair& pair) {
  return {{"v_plus", to_json(pair.v_plus)},
          {"v_minus", to_json(pair.v_minus)},
          {"c_plus", to_json(pair.c_plus)},
          {"c_minus", to_json(pair.c_minus)}};
}

json to_json(const PerturbationSeries& series) {
  json j = {{"N", series.N},           {"n", series.n},
            {"order", series.K_max},   {"gauge", gauge_name(series.gauge)},
            {"s0", to_json(series.s_corr.at(0).constant())}, {"t0", to_json(series.t_corr.at(0).constant())}};
  j["s_corr"] = json::array();
  j["t_corr"] = json::array();
  j["u_corr"] = json::array();
  for (const auto& p : series.s_corr) j["s_corr"].push_back(to_json(p));
  for (const auto& p : series.t_corr) j["t_corr"].push_back(to_json(p));
  for (const auto& u : series.u_corr) j["u_corr"].push_back(to_json(u));
  return j;
}

PerturbationSeries series_from_json(const json& j) {
  PerturbationSeries s;
  s.N = field(j, "N").get<int>();
  s.n = field(j, "n").get<int>();
  s.K_max = field(j, "order").get<int>();
  const auto gauge = field(j, "gauge").get<std::string>();
  if (gauge != "down" && gauge != "up") throw UsageError("unknown gauge '" + gauge + "'");
  s.gauge = gauge == "down" ? Gauge::first_component_zero : Gauge::last_component_zero;
  s.root = real_root(s.N, s.n);
  for (const auto& p : field(j, "s_corr")) s.s_corr.push_back(bipoly_from_json(p));
  for (const auto& p : field(j, "t_corr")) s.t_corr.push_back(bipoly_from_json(p));
  for (const auto& u : field(j, "u_corr")) s.u_corr.push_back(bipoly_vector_from_json(u));
  const auto expected = static_cast<std::size_t>(s.K_max) + 1;
  if (s.s_corr.size() != expected || s.t_corr.size() != expected || s.u_corr.size() != expected) {
    throw UsageError("series JSON does not hold orders 0..order");
  }
  return s;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace qes::cli
