#include "qes/exactnum/bivariate_poly.hpp"

#include <sstream>

#include "qes/errors.hpp"

namespace qes {

BivariatePoly::BivariatePoly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exponents{0, 0}, constant);
}

BivariatePoly BivariatePoly::b() { return term(1, 1, 0); }
BivariatePoly BivariatePoly::g() { return term(1, 0, 1); }

BivariatePoly BivariatePoly::term(const Rational& c, int deg_b, int deg_g) {
  BivariatePoly p;
  p.add_term({deg_b, deg_g}, c);
  return p;
}

bool BivariatePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0});
}

Rational BivariatePoly::coefficient(int deg_b, int deg_g) const {
  auto it = terms_.find({deg_b, deg_g});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BivariatePoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

void BivariatePoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

BivariatePoly BivariatePoly::operator-() const {
  BivariatePoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const BivariatePoly& o) {
  BivariatePoly out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

BivariatePoly& BivariatePoly::operator/=(const Rational& c) {
  if (c == 0) throw ArithmeticError("division of a polynomial by zero");
  for (auto& [e, x] : terms_) x /= c;
  return *this;
}

std::string BivariatePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational a = mp::abs(c);
    const bool bare = e.first + e.second > 0;
    if (!bare || a != 1) os << to_string(a) << (bare ? "*" : "");
    if (e.first > 0) os << "b" << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.first > 0 && e.second > 0) os << "*";
    if (e.second > 0) os << "g" << (e.second > 1 ? "^" + std::to_string(e.second) : "");
  }
  return os.str();
}

Rational bipoly_eval(const BivariatePoly& poly, const Rational& b_val, const Rational& g_val) {
  return poly.evaluate<Rational>(b_val, g_val);
}

}  // namespace qes
