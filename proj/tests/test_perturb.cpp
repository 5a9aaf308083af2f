#include "doctest.h"
#include "oracles.hpp"
#include "qes/errors.hpp"
#include "qes/perturb.hpp"
#include "qes/verify.hpp"

using namespace qes;

namespace {

Vector<Rational> vec(std::initializer_list<long> xs) {
  Vector<Rational> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

LeftNullPair pair_for(int N, int n) {
  const RootPair r = real_root(N, n);
  return left_null_pair(r, zero_coefficients(r));
}

/// Order-k coefficient of Q(λ)u(λ) with s(λ), t(λ), assembled from the
/// oracle matrices.
Vector<BivariatePoly> oracle_residual(const PerturbationSeries& ser, int k) {
  const int N = ser.N;
  const Matrix<BivariatePoly> q1 = oracle::q1(N);
  const Matrix<Rational> base = oracle::q0(N, 0, 0);
  Vector<BivariatePoly> r(N + 2);
  for (int i = 0; i <= N + 1; ++i) {
    BivariatePoly acc;
    for (int j = 0; j <= N; ++j) {
      acc += base(i, j) * ser.u_corr[static_cast<std::size_t>(k)](j);
      if (k >= 1) acc += q1(i, j) * ser.u_corr[static_cast<std::size_t>(k - 1)](j);
    }
    for (int m = 0; m <= k; ++m) {
      const auto& u = ser.u_corr[static_cast<std::size_t>(k - m)];
      if (i <= N) acc += ser.s_corr[static_cast<std::size_t>(m)] * u(i);
      if (i >= 1) acc += ser.t_corr[static_cast<std::size_t>(m)] * u(i - 1);
    }
    r(i) = acc;
  }
  return r;
}

bool is_zero(const Vector<BivariatePoly>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("left null pairs for small N") {
  const LeftNullPair p0 = pair_for(0, 0);
  CHECK(p0.v_plus == vec({1, 1}));
  CHECK(p0.v_minus == vec({1, -1}));
  CHECK(p0.c_plus == 1);
  CHECK(p0.c_minus == 1);

  const LeftNullPair p1 = pair_for(1, 0);
  CHECK(p1.v_plus == vec({1, 0, -1}));
  CHECK(p1.c_plus == 1);
  CHECK(p1.v_minus == vec({1, -2, 1}));
  CHECK(p1.c_minus == 3);

  const LeftNullPair p2 = pair_for(2, 1);
  CHECK(p2.v_plus == vec({1, 1, 1, 1}));
  CHECK(p2.v_minus == vec({3, -1, 1, -3}));
  CHECK(p2.c_plus == 3);
  CHECK(p2.c_minus == 3);
}

TEST_CASE("left null pairs annihilate Q0 and satisfy the overlap signs") {
  for (int N = 0; N <= 12; ++N) {
    for (int n = 0; n <= N / 2; ++n) {
      const RootPair r = real_root(N, n);
      const CoefficientVector u0 = zero_coefficients(r);
      const LeftNullPair p = left_null_pair(r, u0);
      const Matrix<Rational> q = oracle::q0(N, r.s.real_part(), r.t.real_part());
      CHECK(Vector<Rational>(q.transpose() * p.v_plus).isZero());
      CHECK(Vector<Rational>(q.transpose() * p.v_minus).isZero());
      const SelectorPair sel = selectors(N);
      const Vector<Rational> ju = sel.J * u0.entries, ku = sel.K * u0.entries;
      CHECK(p.v_plus.dot(ju) == p.c_plus);
      CHECK(p.v_plus.dot(ku) == p.c_plus);
      CHECK(p.v_minus.dot(ju) == p.c_minus);
      CHECK(p.v_minus.dot(ku) == -p.c_minus);
      CHECK(p.c_plus != 0);
      CHECK(p.c_minus != 0);
    }
  }
}

TEST_CASE("rank anomaly away from a root") {
  const RootPair fake{HalfEisenstein::from_integer(1), HalfEisenstein::from_integer(1), 2, std::nullopt};
  CHECK_THROWS_AS(left_null_pair(fake, CoefficientVector{vec({1, -1, 1}), 2, fake}), RankAnomalyError);
}

TEST_CASE("shortened left vectors") {
  const CompactLeftPair a = compact_left_pair(real_root(2, 1));
  CHECK(a.sigma == vec({3, 1, 2}));
  CHECK(a.theta == vec({2, 1, 3}));
  CHECK_FALSE(a.dependent);
  const CompactLeftPair b = compact_left_pair(real_root(4, 1));
  CHECK(b.sigma == vec({7, -3, -1, -1, 4}));
  CHECK(b.theta == vec({4, -1, -1, -3, 7}));
  CHECK(compact_left_pair(real_root(1, 0)).dependent);
  CHECK(compact_left_pair(real_root(4, 0)).dependent);
  CHECK(compact_left_pair(real_root(2, 0)).dependent);
}

TEST_CASE("first-order right-hand side and corrections at N=1") {
  const auto b = BivariatePoly::b(), g = BivariatePoly::g();
  PerturbationSeries ser = run_series(1, 0, 0);
  const Vector<BivariatePoly> xi = rhs_xi(1, ser, build_split(1));
  REQUIRE(xi.size() == 3);
  CHECK(xi(0).is_zero());
  CHECK(xi(1) == -g);
  CHECK(xi(2) == -b);
  const auto [s1, t1] = solve_st(ser.pair, xi);
  CHECK(s1 == (b + g) / Rational(3));
  CHECK(t1 == (Rational(2) * b - g) / Rational(3));
  const Vector<BivariatePoly> u1 =
      propagate_u(known_terms(xi, s1, t1, zero_coefficients(ser.root).entries), ser.root, Gauge::first_component_zero);
  CHECK(u1(0).is_zero());
  CHECK(u1(1) == -(b + g) / Rational(3));
}

TEST_CASE("N=0 carries no corrections") {
  const PerturbationSeries ser = run_series(0, 0, 4);
  const Vector<BivariatePoly> xi = rhs_xi(1, ser, build_split(0));
  CHECK(is_zero(xi));
  for (int k = 1; k <= 4; ++k) {
    CHECK(ser.s_corr[static_cast<std::size_t>(k)].is_zero());
    CHECK(ser.t_corr[static_cast<std::size_t>(k)].is_zero());
    CHECK(is_zero(ser.u_corr[static_cast<std::size_t>(k)]));
  }
}

TEST_CASE("homogeneous propagation gives zero") {
  for (int N = 1; N <= 6; ++N) {
    const Vector<BivariatePoly> tau = Vector<BivariatePoly>::Zero(N + 2);
    CHECK(is_zero(propagate_u(tau, real_root(N, 0), Gauge::first_component_zero)));
    CHECK(is_zero(propagate_u(tau, real_root(N, 0), Gauge::last_component_zero)));
  }
}

TEST_CASE("inconsistent known terms are rejected") {
  Vector<BivariatePoly> tau = Vector<BivariatePoly>::Zero(3);
  tau(2) = BivariatePoly(1);
  CHECK_THROWS_AS(propagate_u(tau, real_root(1, 0), Gauge::first_component_zero), InconsistencyError);
}

TEST_CASE("triangular propagators have determinant N!") {
  CHECK(determinant<Rational>(r_star(real_root(5, 0), Gauge::first_component_zero)) == 120);
  for (int N = 1; N <= 12; ++N) {
    for (int n = 0; n <= N / 2; ++n) {
      for (Gauge gauge : {Gauge::first_component_zero, Gauge::last_component_zero}) {
        const Matrix<Rational> r = r_star(real_root(N, n), gauge);
        CHECK(oracle::det(r) == Rational(oracle::factorial(N)));
        // triangular with diagonal 1..N or N..1
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            if (gauge == Gauge::first_component_zero && j > i) CHECK(r(i, j) == 0);
            if (gauge == Gauge::last_component_zero && j < i) CHECK(r(i, j) == 0);
          }
      }
    }
  }
}

TEST_CASE("hierarchy residuals vanish identically against the oracle matrices") {
  for (int N = 0; N <= 6; ++N) {
    for (int n = 0; n <= N / 2; ++n) {
      for (Gauge gauge : {Gauge::first_component_zero, Gauge::last_component_zero}) {
        const PerturbationSeries ser = run_series(N, n, 3, gauge);
        for (int k = 0; k <= 3; ++k) {
          CHECK(is_zero(oracle_residual(ser, k)));
          CHECK(is_zero(order_residual(ser, k)));
          const auto& u = ser.u_corr[static_cast<std::size_t>(k)];
          if (k >= 1) CHECK((gauge == Gauge::first_component_zero ? u(0) : u(N)).is_zero());
          CHECK(ser.s_corr[static_cast<std::size_t>(k)].total_degree() <= k);
          CHECK(ser.t_corr[static_cast<std::size_t>(k)].total_degree() <= k);
        }
      }
    }
  }
}

TEST_CASE("gauge covariance") {
  for (int N = 1; N <= 6; ++N) {
    for (int n = 0; n <= N / 2; ++n) {
      const PerturbationSeries down = run_series(N, n, 3, Gauge::first_component_zero);
      const PerturbationSeries up = run_series(N, n, 3, Gauge::last_component_zero);
      CHECK(down.s_corr == up.s_corr);
      CHECK(down.t_corr == up.t_corr);
      const auto factor = gauge_factor(down, up);
      REQUIRE(factor.size() == 4);
      CHECK(factor[0] == BivariatePoly(1));
      // At first order the two gauges differ by a multiple of u0.
      const Vector<BivariatePoly> diff = up.u_corr[1] - down.u_corr[1];
      for (int i = 0; i <= N; ++i) CHECK(diff(i) == factor[1] * down.u_corr[0](i));
    }
  }
}

TEST_CASE("series evaluation") {
  const PerturbationSeries ser = run_series(4, 1, 3);
  const auto at0 = evaluate_series<Rational>(ser, 0, 5, -3);
  CHECK(at0.s == 1);
  CHECK(at0.t == 1);
  CHECK(at0.u == zero_coefficients(4, 1).entries);

  const PerturbationSeries one = run_series(1, 0, 4);
  for (double lambda : {0.1, 0.01}) {
    const auto v = evaluate_series<double>(one, lambda, 0.0, 0.0);
    CHECK(v.s == 1.0);
    CHECK(v.t == 1.0);
  }
  const auto v = evaluate_series<double>(run_series(1, 0, 1), 1e-3, 1.0, 2.0);
  const auto root = cubic_oracle_n1<double>(1e-3, 1.0, 2.0);
  CHECK(std::abs(v.s - root.s) < 1e-5);
  CHECK(v.s == doctest::Approx(1.001));
}

TEST_CASE("second-order series tracks the Newton solution to O(lambda^3)") {
  const PerturbationSeries ser = run_series(4, 2, 2);
  std::vector<double> lambdas{1e-2, 1e-3}, errors;
  for (double lambda : lambdas) {
    const Real l(lambda), b(0), g(Rational(1, 2).convert_to<double>());
    const auto seed = evaluate_series<Real>(ser, l, b, g);
    const auto sol = newton_full<Real>(4, l, b, g, seed.s, seed.t, seed.u);
    REQUIRE(sol.converged);
    errors.push_back(abs(sol.s - seed.s).convert_to<double>());
  }
  CHECK(loglog_slope(lambdas, errors) > 2.5);
}
