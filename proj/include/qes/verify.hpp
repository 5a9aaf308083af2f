#pragma once

// Independent checks: the closed N=1 cubic, Newton on the full nonlinear
// system, the radial ODE residual of an assembled wavefunction and
// series-versus-oracle convergence tables.

#include <cmath>
#include <string>
#include <vector>

#include "qes/dense.hpp"
#include "qes/errors.hpp"
#include "qes/exactnum/bivariate_poly.hpp"
#include "qes/magyari.hpp"
#include "qes/perturb.hpp"

namespace qes {

/// λ-expansion of the N=1 system s³ - λg s² - λb s - 1 = 0, t = s² - λg s,
/// u = (1, -s), around the real root s = 1, through order K.
struct CubicSeries {
  std::vector<BivariatePoly> s;
  std::vector<BivariatePoly> t;
  std::vector<Vector<BivariatePoly>> u;
};

CubicSeries cubic_oracle_n1(int K);

template <class Scalar>
struct CubicRoot {
  Scalar s;
  Scalar t;
  Vector<Scalar> u;
};

/// Real root of the N=1 cubic continued from s = 1, by Newton on the cubic.
template <class Scalar>
CubicRoot<Scalar> cubic_oracle_n1(const Scalar& lambda, const Scalar& b, const Scalar& g) {
  using std::abs;
  Scalar s(1);
  for (int iter = 0; iter < 200; ++iter) {
    const Scalar f = s * s * s - lambda * g * s * s - lambda * b * s - Scalar(1);
    const Scalar df = Scalar(3) * s * s - Scalar(2) * lambda * g * s - lambda * b;
    const Scalar step = f / df;
    s -= step;
    if (abs(step) <= std::numeric_limits<Scalar>::epsilon() * Scalar(4) * (Scalar(1) + abs(s))) break;
  }
  CubicRoot<Scalar> out{s, s * s - lambda * g * s, Vector<Scalar>(2)};
  out.u << Scalar(1), Scalar(-s);
  return out;
}

template <class Scalar>
struct NewtonSolution {
  Vector<Scalar> u;  ///< u_0 = 1
  Scalar s;
  Scalar t;
  Scalar residual_norm;  ///< max |row| of Q(λ)u over all N+2 rows
  int iterations = 0;
  bool converged = false;
};

template <class Scalar>
struct NewtonOptions {
  int max_iterations = 100;
  /// Convergence when the max-norm residual drops below tolerance·(1 + max|u|).
  Scalar tolerance = std::numeric_limits<Scalar>::epsilon() * Scalar(64);
};

namespace detail {

template <class Scalar>
Vector<Scalar> newton_rows(const BandMatrix<Scalar>& q, const Vector<Scalar>& u) {
  return q.apply(u);
}

template <class Scalar>
Scalar max_abs(const Vector<Scalar>& v) {
  using std::abs;
  Scalar m(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max<Scalar>(m, Scalar(abs(v(i))));
  return m;
}

}  // namespace detail

/// Damped Newton on the N+2 rows of [Q⁽⁰⁾(s,t) + λQ⁽¹⁾] u = 0 with unknowns
/// u_1..u_N, s, t and u_0 pinned to 1. The seed vector is rescaled so that
/// its first entry is 1. SingularJacobianError when the Jacobian has no
/// inverse; non-convergence is reported through `converged`.
template <class Scalar>
NewtonSolution<Scalar> newton_full(int N, const Scalar& lambda, const Scalar& b, const Scalar& g,
                                   const Scalar& s_seed, const Scalar& t_seed, const Vector<Scalar>& u_seed,
                                   const NewtonOptions<Scalar>& options = {}) {
  using std::abs;
  if (u_seed.size() != N + 1) throw DomainError("seed vector must have N+1 entries");
  if (u_seed(0) == Scalar(0)) throw DomainError("seed vector must have a nonzero first entry");
  const PseudoHamiltonian split = build_split(N);

  NewtonSolution<Scalar> sol;
  sol.u = u_seed / u_seed(0);
  sol.s = s_seed;
  sol.t = t_seed;
  auto rows_at = [&](const Scalar& s, const Scalar& t, const Vector<Scalar>& u) {
    return split.full(lambda, s, t, b, g).apply(u);
  };
  Vector<Scalar> r = rows_at(sol.s, sol.t, sol.u);
  sol.residual_norm = detail::max_abs(r);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (sol.residual_norm <= options.tolerance * (Scalar(1) + detail::max_abs(sol.u))) {
      sol.converged = true;
      break;
    }
    const BandMatrix<Scalar> q = split.full(lambda, sol.s, sol.t, b, g);
    Matrix<Scalar> jac = Matrix<Scalar>::Zero(N + 2, N + 2);
    for (int j = 1; j <= N; ++j)
      for (int i = 0; i <= N + 1; ++i) jac(i, j - 1) = q.at(i, j);
    const Vector<Scalar> ju = select_J(sol.u), ku = select_K(sol.u);
    jac.col(N) = ju;
    jac.col(N + 1) = ku;

    Eigen::FullPivLU<Matrix<Scalar>> lu(jac);
    if (!lu.isInvertible()) throw SingularJacobianError("Newton Jacobian is singular at N=" + std::to_string(N));
    const Vector<Scalar> delta = lu.solve(r);

    Scalar step(1);
    bool improved = false;
    for (int halving = 0; halving < 30 && !improved; ++halving, step /= Scalar(2)) {
      Vector<Scalar> u_try = sol.u;
      for (int j = 1; j <= N; ++j) u_try(j) -= step * delta(j - 1);
      const Scalar s_try = sol.s - step * delta(N);
      const Scalar t_try = sol.t - step * delta(N + 1);
      Vector<Scalar> r_try = rows_at(s_try, t_try, u_try);
      const Scalar norm_try = detail::max_abs(r_try);
      if (norm_try < sol.residual_norm) {
        sol.u = std::move(u_try);
        sol.s = s_try;
        sol.t = t_try;
        r = std::move(r_try);
        sol.residual_norm = norm_try;
        improved = true;
      }
    }
    sol.iterations = iter + 1;
    if (!improved) break;
  }
  if (!sol.converged) sol.converged = sol.residual_norm <= options.tolerance * (Scalar(1) + detail::max_abs(sol.u));
  return sol;
}

struct OdeResidual {
  /// max over the grid of |residual| / (1 + |ψ|).
  Real relative;
  /// max over the grid of |residual| / Σ|terms|, with the common factor
  /// r^{l+1} e^{-φ} removed; insensitive to the size of ψ itself.
  Real normalized;
};

/// Radial equation [-d²/dr² + ℓ(ℓ+1)/r² + V(r) - E] ψ applied analytically to
///   ψ(r) = exp(-αr³/3 - βr²/2 - γr) Σ ω_n r^{n+l+1},  ω_n = u_n / μⁿ,
/// with V = A r⁴ + B r³ + C r² + D(N) r + F/r + G/r². DomainError for a
/// non-positive grid point.
OdeResidual ode_residual(const Vector<Real>& u, const AnsatzParams& ansatz, const Real& E, const Real& F, int N,
                         const std::vector<Real>& grid);

/// `count` points spaced logarithmically on [lo, hi].
std::vector<Real> log_grid(const Real& lo, const Real& hi, int count);

struct ConvergenceReport {
  int N = 0;
  int n = 0;
  int K_max = 0;
  std::vector<double> lambda_grid;
  /// errors_per_order[K][i]: max over s, t and u of |order-K partial sum -
  /// Newton solution| at lambda_grid[i].
  std::vector<std::vector<double>> errors_per_order;
  /// Least-squares slope of log(error) against log(λ), per order. NaN when
  /// an error is exactly zero on the grid.
  std::vector<double> fitted_slopes;
  /// Largest Newton residual met on the grid.
  double worst_newton_residual = 0;
};

/// Series through K_max against extended-precision Newton at each λ.
ConvergenceReport convergence_report(int N, int n, int K_max, const std::vector<Rational>& lambda_grid,
                                     const Rational& b, const Rational& g);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qes
