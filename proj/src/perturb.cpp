#include "qes/perturb.hpp"

#include "qes/errors.hpp"
#include "qes/linalg.hpp"

namespace qes {

namespace {

template <class T>
T dot(const Vector<Rational>& v, const Vector<T>& w) {
  T acc = T(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) acc += v(i) * w(i);
  }
  return acc;
}

Vector<BivariatePoly> lift(const Vector<Rational>& v) {
  Vector<BivariatePoly> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = BivariatePoly(v(i));
  return out;
}

bool all_zero(const Vector<BivariatePoly>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

BandMatrix<Rational> zero_order_at(const RootPair& root) {
  if (!root.is_real()) throw DomainError("perturbation theory needs a real zero-order root");
  return build_split(root.N).zero_order(root.s.real_part(), root.t.real_part());
}

Matrix<Rational> two_dim_left_kernel(const RootPair& root) {
  const Matrix<Rational> q = zero_order_at(root).dense();
  Matrix<Rational> basis = left_kernel_basis(q);
  if (basis.cols() != 2) {
    throw RankAnomalyError("left kernel of Q0 at N=" + std::to_string(root.N) + ", s=" + root.s.str() +
                           " has dimension " + std::to_string(basis.cols()) + ", expected 2");
  }
  return basis;
}

/// The combination ⟨b|w⟩a - ⟨a|w⟩b of the kernel basis orthogonal to w.
Vector<Rational> orthogonal_combination(const Matrix<Rational>& basis, const Vector<Rational>& w) {
  const Vector<Rational> a = basis.col(0), b = basis.col(1);
  const Rational wa = dot(a, w), wb = dot(b, w);
  if (wa == 0 && wb == 0) return a;
  Vector<Rational> v = a;
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = wb * a(i) - wa * b(i);
  return v;
}

Vector<Rational> unit_vector(Eigen::Index size, Eigen::Index at) {
  Vector<Rational> e = Vector<Rational>::Zero(size);
  e(at) = 1;
  return e;
}

}  // namespace

const char* gauge_name(Gauge gauge) { return gauge == Gauge::first_component_zero ? "down" : "up"; }

LeftNullPair left_null_pair(const RootPair& root, const CoefficientVector& u0) {
  const Matrix<Rational> basis = two_dim_left_kernel(root);
  const Vector<Rational> ju = select_J(u0.entries), ku = select_K(u0.entries);
  const Vector<Rational> w_plus = ju - ku, w_minus = ju + ku;

  LeftNullPair pair;
  pair.v_plus = primitive_integer_form(orthogonal_combination(basis, w_plus));
  pair.v_minus = primitive_integer_form(orthogonal_combination(basis, w_minus));
  pair.c_plus = dot(pair.v_plus, ju);
  pair.c_minus = dot(pair.v_minus, ju);
  if (pair.c_plus == 0 || pair.c_minus == 0 || dot(pair.v_plus, ku) != pair.c_plus ||
      dot(pair.v_minus, ku) != -pair.c_minus) {
    throw DegenerateOverlapError("overlap <v|J u0> vanishes at N=" + std::to_string(root.N) + ", s=" + root.s.str());
  }
  return pair;
}

CompactLeftPair compact_left_pair(const RootPair& root) {
  const Matrix<Rational> basis = two_dim_left_kernel(root);
  const Eigen::Index len = basis.rows();
  const Vector<Rational> sigma_full = orthogonal_combination(basis, unit_vector(len, len - 1));
  const Vector<Rational> theta_full = orthogonal_combination(basis, unit_vector(len, 0));

  CompactLeftPair out;
  out.sigma = primitive_integer_form(Vector<Rational>(sigma_full.head(len - 1)));
  out.theta = primitive_integer_form(Vector<Rational>(theta_full.tail(len - 1)));
  const auto pair_rank = [](const Vector<Rational>& x, const Vector<Rational>& y) {
    Matrix<Rational> m(x.size(), 2);
    m << x, y;
    return rank(m);
  };
  out.dependent = pair_rank(sigma_full, theta_full) < 2 || pair_rank(out.sigma, out.theta) < 2;
  return out;
}

Vector<BivariatePoly> rhs_xi(int k, const PerturbationSeries& series, const PseudoHamiltonian& q) {
  if (k < 1 || static_cast<std::size_t>(k) > series.u_corr.size()) {
    throw DomainError("rhs_xi needs orders 0.." + std::to_string(k - 1));
  }
  const auto at = [&](int j) { return static_cast<std::size_t>(j); };
  Vector<BivariatePoly> xi = q.first_order.apply(series.u_corr[at(k - 1)]);
  for (int j = 1; j <= k - 1; ++j) {
    xi += series.s_corr[at(j)] * select_J(series.u_corr[at(k - j)]);
    xi += series.t_corr[at(j)] * select_K(series.u_corr[at(k - j)]);
  }
  return -xi;
}

std::pair<BivariatePoly, BivariatePoly> solve_st(const LeftNullPair& pair, const Vector<BivariatePoly>& xi) {
  if (pair.c_plus == 0 || pair.c_minus == 0) throw DegenerateOverlapError("zero overlap blocks the 2x2 inversion");
  const BivariatePoly sum = dot(pair.v_plus, xi) / pair.c_plus;
  const BivariatePoly diff = dot(pair.v_minus, xi) / pair.c_minus;
  return {(sum + diff) / Rational(2), (sum - diff) / Rational(2)};
}

Vector<BivariatePoly> known_terms(const Vector<BivariatePoly>& xi, const BivariatePoly& s_k, const BivariatePoly& t_k,
                                  const Vector<Rational>& u0) {
  const Vector<BivariatePoly> ju = lift(select_J(u0)), ku = lift(select_K(u0));
  Vector<BivariatePoly> tau = xi;
  for (Eigen::Index i = 0; i < tau.size(); ++i) tau(i) -= s_k * ju(i) + t_k * ku(i);
  return tau;
}

Vector<BivariatePoly> propagate_u(const Vector<BivariatePoly>& tau, const RootPair& root, Gauge gauge) {
  const int N = root.N;
  const BandMatrix<Rational> q = zero_order_at(root);
  if (tau.size() != N + 2) throw DomainError("known-terms vector must have N+2 entries");

  Vector<BivariatePoly> u = Vector<BivariatePoly>::Zero(N + 1);
  if (gauge == Gauge::first_component_zero) {
    for (int i = 0; i <= N - 1; ++i) {
      BivariatePoly acc = tau(i) - q.main(i) * u(i);
      if (i >= 1) acc -= q.sub(i) * u(i - 1);
      if (i >= 2) acc -= q.subsub(i) * u(i - 2);
      u(i + 1) = acc / q.super(i);
    }
  } else {
    for (int i = N + 1; i >= 2; --i) {
      BivariatePoly acc = tau(i) - q.sub(i) * u(i - 1);
      if (i <= N) acc -= q.main(i) * u(i);
      if (i <= N - 1) acc -= q.super(i) * u(i + 1);
      u(i - 2) = acc / q.subsub(i);
    }
  }

  Vector<BivariatePoly> check = q.apply(u) - tau;
  if (!all_zero(check)) {
    throw InconsistencyError("consistency rows do not vanish after the triangular solve at N=" + std::to_string(N));
  }
  return u;
}

Matrix<Rational> r_star(const RootPair& root, Gauge gauge) {
  const int N = root.N;
  const Matrix<Rational> q = zero_order_at(root).dense();
  if (N == 0) return Matrix<Rational>(0, 0);
  return gauge == Gauge::first_component_zero ? Matrix<Rational>(q.block(0, 1, N, N))
                                              : Matrix<Rational>(q.block(2, 0, N, N));
}

PerturbationSeries run_series(int N, int n, int K_max, Gauge gauge) {
  if (K_max < 0) throw DomainError("series order must be non-negative");
  PerturbationSeries series;
  series.N = N;
  series.n = n;
  series.K_max = K_max;
  series.gauge = gauge;
  series.root = real_root(N, n);
  const CoefficientVector u0 = zero_coefficients(series.root);
  series.pair = left_null_pair(series.root, u0);
  series.s_corr.emplace_back(series.root.s.real_part());
  series.t_corr.emplace_back(series.root.t.real_part());
  series.u_corr.push_back(lift(u0.entries));

  const PseudoHamiltonian q = build_split(N);
  for (int k = 1; k <= K_max; ++k) {
    const Vector<BivariatePoly> xi = rhs_xi(k, series, q);
    auto [s_k, t_k] = solve_st(series.pair, xi);
    const Vector<BivariatePoly> tau = known_terms(xi, s_k, t_k, u0.entries);
    series.u_corr.push_back(propagate_u(tau, series.root, gauge));
    series.s_corr.push_back(std::move(s_k));
    series.t_corr.push_back(std::move(t_k));
    if (!all_zero(order_residual(series, k))) {
      throw InconsistencyError("order " + std::to_string(k) + " residual does not vanish");
    }
  }
  return series;
}

Vector<BivariatePoly> order_residual(const PerturbationSeries& series, int k) {
  if (k < 0 || k > static_cast<int>(series.u_corr.size()) - 1) throw DomainError("order outside the series");
  const auto at = [](int j) { return static_cast<std::size_t>(j); };
  const PseudoHamiltonian q = build_split(series.N);
  Vector<BivariatePoly> r = q.base.apply(series.u_corr[at(k)]);
  for (int j = 0; j <= k; ++j) {
    r += series.s_corr[at(j)] * select_J(series.u_corr[at(k - j)]);
    r += series.t_corr[at(j)] * select_K(series.u_corr[at(k - j)]);
  }
  if (k >= 1) r += q.first_order.apply(series.u_corr[at(k - 1)]);
  return r;
}

std::vector<BivariatePoly> gauge_factor(const PerturbationSeries& down, const PerturbationSeries& up) {
  if (down.N != up.N || down.root != up.root || down.K_max != up.K_max) return {};
  const int K = down.K_max;
  const auto at = [](int j) { return static_cast<std::size_t>(j); };
  for (int k = 0; k <= K; ++k) {
    if (down.s_corr[at(k)] != up.s_corr[at(k)] || down.t_corr[at(k)] != up.t_corr[at(k)]) return {};
  }
  // Pick a component where u⁽⁰⁾ is nonzero to read off the coefficients.
  int pivot = 0;
  while (pivot <= down.N && down.u_corr[0](pivot).is_zero()) ++pivot;
  if (pivot > down.N) return {};
  const Rational lead = down.u_corr[0](pivot).constant();

  std::vector<BivariatePoly> c;
  for (int k = 0; k <= K; ++k) {
    BivariatePoly acc = up.u_corr[at(k)](pivot);
    for (int j = 0; j < k; ++j) acc -= c[at(j)] * down.u_corr[at(k - j)](pivot);
    c.push_back(acc / lead);
    for (int i = 0; i <= down.N; ++i) {
      BivariatePoly sum;
      for (int j = 0; j <= k; ++j) sum += c[at(j)] * down.u_corr[at(k - j)](i);
      if (sum != up.u_corr[at(k)](i)) return {};
    }
  }
  return c;
}

}  // namespace qes
