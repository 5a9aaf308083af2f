#include "doctest.h"
#include "oracles.hpp"
#include "qes/errors.hpp"
#include "qes/magyari.hpp"

using namespace qes;

namespace {

PhysicalParams couplings(long A, long B, long C, long G, int ell = 0) {
  return {RealValue(A), RealValue(B), RealValue(C), RealValue(G), ell};
}

}  // namespace

TEST_CASE("ansatz parameters for an integer centrifugal root") {
  const AnsatzParams a = derive_ansatz(couplings(1, 0, 0, 2), 0);
  CHECK(*a.alpha.exact() == 1);
  CHECK(*a.beta.exact() == 0);
  CHECK(*a.gamma.exact() == 0);
  CHECK(*a.l_eff.exact() == 1);
  CHECK(*a.Omega.exact() == 2);
  CHECK(*a.D(0).exact() == -6);
}

TEST_CASE("strong-core example with Omega = 64") {
  const AnsatzParams a = derive_ansatz(couplings(1, 0, 1, 4032), 4);
  CHECK(*a.Omega.exact() == 64);
  CHECK(*a.mu.exact() == 4);
  CHECK(*a.tau.exact() == 16);
  CHECK(*a.gamma.exact() == Rational(1, 2));
  // C = 4 (A²/Ω)^{1/3} ties γ to Ω: γ = 2 (α/Ω)^{1/3}.
  CHECK(*a.gamma.exact() == 2 * *exact_cbrt(*a.alpha.exact() / *a.Omega.exact()));
  CHECK(*a.lambda.exact() == Rational(1, 64));
  CHECK(*a.b.exact() == 0);
  CHECK(*a.g.exact() == 2);
  CHECK(*a.D(4).exact() == -138);
  CHECK(*a.D(4).exact() == -2 * (*a.Omega.exact() + 5));

  const PhysicalSpectrum ph = backout_physical(RealValue(-2), RealValue(-2), a);
  REQUIRE(ph.E.is_exact());
  CHECK(*ph.E.exact() == Rational(-65, 4));
  // E = -γ² - 4 (AΩ)^{1/3}
  CHECK(*ph.E.exact() == -Rational(1, 4) - 4 * *exact_cbrt(Rational(64)));
  CHECK(*ph.F.exact() == 0);
}

TEST_CASE("scale identities hold exactly or to rounding") {
  const AnsatzParams exact = derive_ansatz(couplings(4, 2, 3, 4032), 2);
  CHECK((exact.alpha * exact.mu * exact.mu).to_double() == doctest::Approx(exact.tau.to_double()));
  const AnsatzParams a = derive_ansatz(couplings(3, 1, -2, 50, 1), 2);
  const Real tol("1e-45");
  CHECK(abs((a.mu * a.tau).value() - a.Omega.value()) < tol);
  CHECK(abs((a.alpha * a.mu * a.mu).value() - a.tau.value()) < tol);
  CHECK(abs((a.Omega / a.mu).value() - a.tau.value()) < tol);
  CHECK(abs((a.lambda * a.mu * a.tau).value() - 1) < tol);
  // G + ℓ(ℓ+1) = l(l+1)
  CHECK(abs((a.l_eff * (a.l_eff + RealValue(1))).value() - 52) < tol);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(derive_ansatz(couplings(0, 0, 1, 10), 1), DomainError);
  CHECK_THROWS_AS(derive_ansatz(couplings(-1, 0, 1, 10), 1), DomainError);
  CHECK_THROWS_AS(derive_ansatz(couplings(1, 0, 1, -1), 0), DomainError);
  CHECK_THROWS_AS(derive_ansatz(couplings(1, 0, 1, 10), -1), DomainError);
  CHECK_NOTHROW(derive_ansatz(couplings(1, 0, 1, -1, 1), 0));
  CHECK_THROWS_AS(ansatz_from_formal(0, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(build_split(-1), DomainError);
}

TEST_CASE("empty potential backs out to zero energy") {
  const AnsatzParams a = derive_ansatz(couplings(1, 0, 0, 2), 0);
  const PhysicalSpectrum ph = backout_physical(RealValue(0), RealValue(0), a);
  // β = γ = 0 so only the s, t terms could contribute.
  CHECK(*ph.E.exact() == 0);
  CHECK(*ph.F.exact() == 0);
}

TEST_CASE("split matrices match the band formulas") {
  for (int N = 0; N <= 12; ++N) {
    const PseudoHamiltonian h = build_split(N);
    const Matrix<Rational> q0 = h.zero_order(Rational(0), Rational(0)).dense();
    CHECK(q0 == oracle::q0(N, 0, 0));
    const Matrix<BivariatePoly> q1 = h.first_order.dense();
    CHECK((q1 == oracle::q1(N)));
    CHECK(q0.rows() == N + 2);
    CHECK(q0.cols() == N + 1);
    for (int j = 0; j <= N; ++j) CHECK(q1(0, j).is_zero());
  }
  const Matrix<BivariatePoly> q1 = build_split(1).first_order.dense();
  const auto b = BivariatePoly::b(), g = BivariatePoly::g();
  CHECK(q1(0, 0).is_zero());
  CHECK(q1(0, 1).is_zero());
  CHECK(q1(1, 1) == -g);
  CHECK(q1(2, 1) == -b);
  CHECK(build_split(2).base.super(0) == 1);
  CHECK(build_split(2).base.super(1) == 2);
  const int N = 7;
  CHECK(build_split(N).first_order.super(N - 1) == BivariatePoly(Rational(N * (N - 1), 2)));
}

TEST_CASE("selectors reconstruct Q0 and are partial isometries") {
  oracle::Gen gen(17);
  for (int N = 0; N <= 12; ++N) {
    const SelectorPair sel = selectors(N);
    const Matrix<Rational> id = Matrix<Rational>::Identity(N + 1, N + 1);
    CHECK(Matrix<Rational>(sel.J.transpose() * sel.J) == id);
    CHECK(Matrix<Rational>(sel.K.transpose() * sel.K) == id);
    for (int trial = 0; trial < 3; ++trial) {
      const Rational s = gen.rational(), t = gen.rational();
      const Matrix<Rational> built = build_split(N).zero_order(s, t).dense();
      const Matrix<Rational> recon = oracle::q0(N, 0, 0) + s * sel.J + t * sel.K;
      CHECK(built == recon);
      Vector<Rational> u(N + 1);
      for (auto& x : u) x = gen.rational();
      CHECK(select_J(u) == Vector<Rational>(sel.J * u));
      CHECK(select_K(u) == Vector<Rational>(sel.K * u));
    }
  }
}

TEST_CASE("rescaled recurrence reproduces Q0 + lambda Q1 exactly") {
  // Rational ansatz: α = 1, Ω = 8 → μ = 2, τ = 4; β, γ chosen freely.
  oracle::Gen gen(23);
  for (int N = 0; N <= 8; ++N) {
    const Rational alpha = 1, Omega = 8, mu = 2, tau = 4, l = Omega - 1;
    const Rational beta = gen.rational(5, 4), gamma = gen.rational(5, 4);
    const Rational s = gen.rational(), t = gen.rational();
    const Rational lambda = 1 / Omega, b = beta * mu * mu, g = gamma * mu;
    // E, F from the back-out relations with these s, t.
    const Rational E = 2 * t * tau / mu + beta * (2 * l + 3) - gamma * gamma;
    const Rational F = -2 * gamma * Omega - 2 * s * tau;
    const Matrix<Rational> raw = recurrence_matrix<Rational>(N, alpha, beta, gamma, l, E, F);
    const Matrix<Rational> scaled = rescale_recurrence<Rational>(raw, mu, tau);
    const Matrix<Rational> split = build_split(N).full<Rational>(lambda, s, t, b, g).dense();
    CHECK(scaled == split);

    AnsatzParams a = ansatz_from_formal(lambda, b, g, N, 0, alpha);
    const PhysicalSpectrum ph = backout_physical(RealValue(s), RealValue(t), a);
    CHECK(abs(ph.E.value() - convert<Real>(E)) < Real("1e-40"));
    CHECK(abs(ph.F.value() - convert<Real>(F)) < Real("1e-40"));
  }
}

TEST_CASE("RealValue keeps exactness through arithmetic") {
  const RealValue a(Rational(1, 3)), b(Rational(2, 3));
  CHECK((a + b).is_exact());
  CHECK(*(a * b).exact() == Rational(2, 9));
  const RealValue r = sqrt(RealValue(2));
  CHECK_FALSE(r.is_exact());
  CHECK((r * RealValue(0)).is_exact());
  CHECK(*sqrt(RealValue(Rational(9, 4))).exact() == Rational(3, 2));
  CHECK(*cbrt(RealValue(-8)).exact() == -2);
  CHECK_THROWS_AS(a / RealValue(0), ArithmeticError);
}
