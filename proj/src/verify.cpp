#include "qes/verify.hpp"

#include <cmath>
#include <limits>

namespace qes {

namespace {

using Series = std::vector<BivariatePoly>;

BivariatePoly coefficient_of_product(const Series& a, const Series& b, int k) {
  BivariatePoly acc;
  for (int j = 0; j <= k; ++j) {
    if (j < static_cast<int>(a.size()) && k - j < static_cast<int>(b.size())) {
      acc += a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    }
  }
  return acc;
}

Series truncated_product(const Series& a, const Series& b, int K) {
  Series out;
  for (int k = 0; k <= K; ++k) out.push_back(coefficient_of_product(a, b, k));
  return out;
}

}  // namespace

CubicSeries cubic_oracle_n1(int K) {
  if (K < 0) throw DomainError("series order must be non-negative");
  const BivariatePoly b = BivariatePoly::b(), g = BivariatePoly::g();
  Series s{BivariatePoly(1)};
  for (int k = 1; k <= K; ++k) {
    s.emplace_back();
    // s³ = 3 s_k λᵏ + (terms fixed by lower orders) at order k.
    const Series s2 = truncated_product(s, s, k);
    const Series s3 = truncated_product(s2, s, k);
    const auto km1 = static_cast<std::size_t>(k - 1);
    const BivariatePoly known = s3[static_cast<std::size_t>(k)] - g * s2[km1] - b * s[km1];
    s.back() = -known / Rational(3);
  }

  CubicSeries out;
  out.s = s;
  const Series s2 = truncated_product(s, s, K);
  for (int k = 0; k <= K; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    BivariatePoly t = s2[uk];
    if (k >= 1) t -= g * s[uk - 1];
    out.t.push_back(t);
    Vector<BivariatePoly> u(2);
    u << BivariatePoly(k == 0 ? 1 : 0), -s[uk];
    out.u.push_back(u);
  }
  return out;
}

OdeResidual ode_residual(const Vector<Real>& u, const AnsatzParams& ansatz, const Real& E, const Real& F, int N,
                         const std::vector<Real>& grid) {
  if (u.size() != N + 1) throw DomainError("coefficient vector must have N+1 entries");
  const Real alpha = ansatz.alpha.value(), beta = ansatz.beta.value(), gamma = ansatz.gamma.value();
  const Real l = ansatz.l_eff.value(), mu = ansatz.mu.value();
  const Real A = ansatz.couplings.A.value(), B = ansatz.couplings.B.value(), C = ansatz.couplings.C.value();
  const Real G = ansatz.couplings.G.value();
  const Real D = ansatz.D(N).value();
  const int ell = ansatz.couplings.ell;
  const Real centrifugal = Real(ell) * Real(ell + 1);

  std::vector<Real> omega(static_cast<std::size_t>(N) + 1);
  Real mu_power = 1;
  for (int n = 0; n <= N; ++n) {
    omega[static_cast<std::size_t>(n)] = u(n) / mu_power;
    mu_power *= mu;
  }

  OdeResidual out{Real(0), Real(0)};
  for (const Real& r : grid) {
    if (r <= 0) throw DomainError("ODE grid points must be positive");
    // p(r) = Σ ω_n rⁿ and derivatives, by Horner.
    Real p = 0, dp = 0, ddp = 0;
    for (int n = N; n >= 0; --n) {
      ddp = ddp * r + 2 * dp;
      dp = dp * r + p;
      p = p * r + omega[static_cast<std::size_t>(n)];
    }
    // ψ = e^h p with h = (l+1) ln r - φ.
    const Real phi = alpha * r * r * r / 3 + beta * r * r / 2 + gamma * r;
    const Real dphi = alpha * r * r + beta * r + gamma;
    const Real ddphi = 2 * alpha * r + beta;
    const Real dh = (l + 1) / r - dphi;
    const Real ddh = -(l + 1) / (r * r) - ddphi;

    const Real r2 = r * r;
    const Real potential_terms[] = {centrifugal / r2, A * r2 * r2, B * r2 * r, C * r2, D * r, F / r, G / r2, -E};
    Real potential = 0, potential_size = 0;
    for (const Real& v : potential_terms) {
      potential += v;
      potential_size += abs(v);
    }
    const Real kinetic_terms[] = {ddh * p, dh * dh * p, 2 * dh * dp, ddp};
    Real kinetic = 0, kinetic_size = 0;
    for (const Real& v : kinetic_terms) {
      kinetic += v;
      kinetic_size += abs(v);
    }
    const Real reduced = -kinetic + potential * p;
    const Real size = kinetic_size + potential_size * abs(p);

    const Real envelope = exp((l + 1) * log(r) - phi);
    const Real psi = envelope * p;
    const Real relative = abs(reduced * envelope) / (1 + abs(psi));
    const Real normalized = size == 0 ? Real(0) : Real(abs(reduced) / size);
    out.relative = std::max(out.relative, relative);
    out.normalized = std::max(out.normalized, normalized);
  }
  return out;
}

std::vector<Real> log_grid(const Real& lo, const Real& hi, int count) {
  if (!(lo > 0) || !(hi >= lo) || count < 1) throw DomainError("log grid needs 0 < lo <= hi and count >= 1");
  std::vector<Real> out;
  const Real a = log(lo), b = log(hi);
  for (int i = 0; i < count; ++i) {
    const Real x = count == 1 ? a : Real(a + (b - a) * i / (count - 1));
    out.push_back(exp(x));
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) return std::numeric_limits<double>::quiet_NaN();
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvergenceReport convergence_report(int N, int n, int K_max, const std::vector<Rational>& lambda_grid,
                                     const Rational& b, const Rational& g) {
  const PerturbationSeries series = run_series(N, n, K_max);
  ConvergenceReport report;
  report.N = N;
  report.n = n;
  report.K_max = K_max;
  report.errors_per_order.assign(static_cast<std::size_t>(K_max) + 1, {});
  const Real bb = convert<Real>(b), gg = convert<Real>(g);

  for (const Rational& lambda_q : lambda_grid) {
    const Real lambda = convert<Real>(lambda_q);
    report.lambda_grid.push_back(convert<double>(lambda_q));
    const auto seed = evaluate_series<Real>(series, lambda, bb, gg);
    const auto sol = newton_full<Real>(N, lambda, bb, gg, seed.s, seed.t, seed.u);
    if (!sol.converged) {
      throw InconsistencyError("Newton oracle did not converge at N=" + std::to_string(N) +
                               ", lambda=" + to_string(lambda_q));
    }
    report.worst_newton_residual = std::max(report.worst_newton_residual, sol.residual_norm.convert_to<double>());
    for (int K = 0; K <= K_max; ++K) {
      const auto partial = evaluate_series<Real>(series, lambda, bb, gg, K);
      Real err = std::max<Real>(abs(partial.s - sol.s), abs(partial.t - sol.t));
      for (int i = 0; i <= N; ++i) err = std::max<Real>(err, abs(partial.u(i) - sol.u(i)));
      report.errors_per_order[static_cast<std::size_t>(K)].push_back(err.convert_to<double>());
    }
  }
  for (const auto& errors : report.errors_per_order) {
    report.fitted_slopes.push_back(loglog_slope(report.lambda_grid, errors));
  }
  return report;
}

}  // namespace qes
