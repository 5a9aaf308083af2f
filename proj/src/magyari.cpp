#include "qes/magyari.hpp"

#include "qes/errors.hpp"

namespace qes {

RealValue RealValue::operator-() const {
  if (exact_) return RealValue(Rational(-*exact_));
  return inexact(Real(-value_));
}

RealValue operator+(const RealValue& a, const RealValue& b) {
  if (a.exact_ && b.exact_) return RealValue(Rational(*a.exact_ + *b.exact_));
  return RealValue::inexact(Real(a.value_ + b.value_));
}

RealValue operator-(const RealValue& a, const RealValue& b) {
  if (a.exact_ && b.exact_) return RealValue(Rational(*a.exact_ - *b.exact_));
  return RealValue::inexact(Real(a.value_ - b.value_));
}

RealValue operator*(const RealValue& a, const RealValue& b) {
  if (a.exact_ && b.exact_) return RealValue(Rational(*a.exact_ * *b.exact_));
  // An exact zero annihilates regardless of the other factor.
  if ((a.exact_ && *a.exact_ == 0) || (b.exact_ && *b.exact_ == 0)) return RealValue(0);
  return RealValue::inexact(Real(a.value_ * b.value_));
}

RealValue operator/(const RealValue& a, const RealValue& b) {
  if (b.exact_ && *b.exact_ == 0) throw ArithmeticError("division by an exact zero");
  if (a.exact_ && b.exact_) return RealValue(Rational(*a.exact_ / *b.exact_));
  if (a.exact_ && *a.exact_ == 0) return RealValue(0);
  return RealValue::inexact(Real(a.value_ / b.value_));
}

std::string RealValue::str() const {
  if (exact_) return to_string(*exact_);
  return value_.str(20);
}

RealValue sqrt(const RealValue& x) {
  if (x.value() < 0) throw DomainError("square root of a negative number");
  if (x.exact()) {
    if (auto r = exact_sqrt(*x.exact())) return RealValue(*r);
  }
  return RealValue::inexact(Real(mp::sqrt(x.value())));
}

RealValue cbrt(const RealValue& x) {
  if (x.exact()) {
    if (auto r = exact_cbrt(*x.exact())) return RealValue(*r);
  }
  return RealValue::inexact(Real(mp::cbrt(x.value())));
}

RealValue AnsatzParams::D(int N) const {
  return RealValue(-2) * alpha * (RealValue(N) + l_eff + RealValue(2)) + RealValue(2) * beta * gamma;
}

namespace {

void finish_scaling(AnsatzParams& a, int N) {
  a.Omega = a.l_eff + RealValue(1);
  a.mu = cbrt(a.Omega / a.alpha);
  a.tau = cbrt(a.Omega * a.Omega * a.alpha);
  a.lambda = RealValue(1) / a.Omega;
  a.b = a.beta * a.mu * a.mu;
  a.g = a.gamma * a.mu;
  a.D_of_N[N] = a.D(N);
}

}  // namespace

AnsatzParams derive_ansatz(const PhysicalParams& params, int N) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  if (params.ell < 0) throw DomainError("angular momentum must be non-negative");
  if (params.A.value() <= 0) throw DomainError("quartic coupling A must be positive");
  const RealValue half(Rational(1, 2));
  const RealValue ell_half = RealValue(params.ell) + half;
  const RealValue radicand = params.G + ell_half * ell_half;
  if (radicand.value() <= 0) throw DomainError("core too attractive: G + (l+1/2)^2 must be positive");

  AnsatzParams a;
  a.couplings = params;
  a.alpha = sqrt(params.A);
  a.beta = params.B / (RealValue(2) * a.alpha);
  a.gamma = (params.C - a.beta * a.beta) / (RealValue(2) * a.alpha);
  a.l_eff = -half + sqrt(radicand);
  finish_scaling(a, N);
  return a;
}

AnsatzParams ansatz_from_formal(const Rational& lambda, const Rational& b, const Rational& g, int N, int ell,
                                const Rational& alpha) {
  if (!(lambda > 0 && lambda < 2)) throw DomainError("formal lambda must lie in (0, 2)");
  if (alpha <= 0) throw DomainError("alpha must be positive");
  if (ell < 0) throw DomainError("angular momentum must be non-negative");

  AnsatzParams a;
  a.alpha = RealValue(alpha);
  a.l_eff = RealValue(Rational(1 / lambda - 1));
  a.Omega = a.l_eff + RealValue(1);
  const RealValue mu = cbrt(a.Omega / a.alpha);
  a.beta = RealValue(b) / (mu * mu);
  a.gamma = RealValue(g) / mu;

  a.couplings.A = a.alpha * a.alpha;
  a.couplings.B = RealValue(2) * a.alpha * a.beta;
  a.couplings.C = a.beta * a.beta + RealValue(2) * a.alpha * a.gamma;
  a.couplings.G = a.l_eff * (a.l_eff + RealValue(1)) - RealValue(ell) * RealValue(ell + 1);
  a.couplings.ell = ell;
  finish_scaling(a, N);
  // Keep the formal symbols bit-exact even when μ is irrational.
  a.b = RealValue(b);
  a.g = RealValue(g);
  return a;
}

PseudoHamiltonian build_split(int N) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  PseudoHamiltonian h;
  h.N = N;
  h.base = BandMatrix<Rational>(N);
  h.first_order = BandMatrix<BivariatePoly>(N);
  for (int i = 2; i <= N + 1; ++i) h.base.subsub(i) = N + 2 - i;
  for (int i = 0; i <= N - 1; ++i) h.base.super(i) = i + 1;

  const BivariatePoly b = BivariatePoly::b();
  const BivariatePoly g = BivariatePoly::g();
  for (int k = 1; k <= N + 1; ++k) h.first_order.sub(k) = Rational(-(k - 1)) * b;
  for (int k = 0; k <= N; ++k) h.first_order.main(k) = Rational(-k) * g;
  for (int k = 0; k <= N - 1; ++k) h.first_order.super(k) = BivariatePoly(Rational(k * (k + 1), 2));
  return h;
}

PseudoHamiltonian build_split(const AnsatzParams& /*ansatz*/, int N) { return build_split(N); }

SelectorPair selectors(int N) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  SelectorPair p{Matrix<Rational>::Zero(N + 2, N + 1), Matrix<Rational>::Zero(N + 2, N + 1)};
  for (int i = 0; i <= N; ++i) {
    p.J(i, i) = 1;
    p.K(i + 1, i) = 1;
  }
  return p;
}

PhysicalSpectrum backout_physical(const RealValue& s, const RealValue& t, const AnsatzParams& a) {
  const RealValue two(2);
  PhysicalSpectrum out;
  out.E = two * t * a.tau / a.mu + a.beta * (two * a.l_eff + RealValue(3)) - a.gamma * a.gamma;
  out.F = -two * a.gamma * a.Omega - two * s * a.tau;
  return out;
}

}  // namespace qes
