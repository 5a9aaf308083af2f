#pragma once

// Order-by-order solution of
//   [Q⁽⁰⁾(s,t) + λQ⁽¹⁾] u = 0,  s = Σ λᵏ s⁽ᵏ⁾,  t = Σ λᵏ t⁽ᵏ⁾,  u = Σ λᵏ u⁽ᵏ⁾
// around a real zero-order root. Every correction is an exact polynomial in
// the formal symbols b and g.

#include <utility>
#include <vector>

#include "qes/dense.hpp"
#include "qes/exactnum/bivariate_poly.hpp"
#include "qes/magyari.hpp"
#include "qes/zeroorder.hpp"

namespace qes {

/// Which component of u⁽ᵏ⁾ (k >= 1) is pinned to zero.
enum class Gauge {
  first_component_zero,  ///< downward propagator, u⁽ᵏ⁾₀ = 0
  last_component_zero,   ///< upward propagator, u⁽ᵏ⁾_N = 0
};

const char* gauge_name(Gauge gauge);

/// Two independent left null vectors of Q⁽⁰⁾(s⁽⁰⁾,t⁽⁰⁾), combined so that
///   ⟨v₊|J u⁽⁰⁾⟩ = ⟨v₊|K u⁽⁰⁾⟩ = c₊  and  ⟨v₋|J u⁽⁰⁾⟩ = -⟨v₋|K u⁽⁰⁾⟩ = c₋.
struct LeftNullPair {
  Vector<Rational> v_plus;
  Vector<Rational> v_minus;
  Rational c_plus;
  Rational c_minus;
};

/// RankAnomalyError unless the left kernel is two-dimensional;
/// DegenerateOverlapError if c₊ or c₋ vanishes.
LeftNullPair left_null_pair(const RootPair& root, const CoefficientVector& u0);

/// Shortened left vectors: σ drops the (zero) last entry of one kernel
/// combination, θ the (zero) first entry of another. `dependent` is set when
/// both come from one kernel vector or the shortened pair is parallel.
struct CompactLeftPair {
  Vector<Rational> sigma;
  Vector<Rational> theta;
  bool dependent = false;
};

CompactLeftPair compact_left_pair(const RootPair& root);

struct PerturbationSeries {
  int N = 0;
  int n = 0;
  int K_max = 0;
  Gauge gauge = Gauge::first_component_zero;
  RootPair root;
  LeftNullPair pair;
  std::vector<BivariatePoly> s_corr;
  std::vector<BivariatePoly> t_corr;
  std::vector<Vector<BivariatePoly>> u_corr;
};

/// Ξ⁽ᵏ⁻¹⁾ = -Q⁽¹⁾u⁽ᵏ⁻¹⁾ - Σ_{j=1}^{k-1} (s⁽ʲ⁾J + t⁽ʲ⁾K) u⁽ᵏ⁻ʲ⁾, length N+2.
/// Needs orders 0..k-1 in `series`.
Vector<BivariatePoly> rhs_xi(int k, const PerturbationSeries& series, const PseudoHamiltonian& q);

/// s⁽ᵏ⁾ + t⁽ᵏ⁾ = ⟨v₊|Ξ⟩/c₊ and s⁽ᵏ⁾ - t⁽ᵏ⁾ = ⟨v₋|Ξ⟩/c₋.
std::pair<BivariatePoly, BivariatePoly> solve_st(const LeftNullPair& pair, const Vector<BivariatePoly>& xi);

/// τ = Ξ - s⁽ᵏ⁾J u⁽⁰⁾ - t⁽ᵏ⁾K u⁽⁰⁾.
Vector<BivariatePoly> known_terms(const Vector<BivariatePoly>& xi, const BivariatePoly& s_k,
                                  const BivariatePoly& t_k, const Vector<Rational>& u0);

/// Solves Q⁽⁰⁾ u = τ through the triangular block R⋆ selected by the gauge,
/// then checks all N+2 rows exactly (InconsistencyError otherwise).
Vector<BivariatePoly> propagate_u(const Vector<BivariatePoly>& tau, const RootPair& root, Gauge gauge);

/// The N×N triangular block of Q⁽⁰⁾(s⁽⁰⁾,t⁽⁰⁾) used by propagate_u:
/// rows 0..N-1 × columns 1..N (downward) or rows 2..N+1 × columns 0..N-1
/// (upward).
Matrix<Rational> r_star(const RootPair& root, Gauge gauge);

/// Full hierarchy for the real branch s = t = N - 3n through order K_max.
/// Each order is re-verified with order_residual before the next begins.
PerturbationSeries run_series(int N, int n, int K_max, Gauge gauge = Gauge::first_component_zero);

/// Coefficient of λᵏ in [Q⁽⁰⁾(s,t) + λQ⁽¹⁾] u, assembled directly from the
/// stored corrections. Zero for every k <= K_max.
Vector<BivariatePoly> order_residual(const PerturbationSeries& series, int k);

/// Power series f(λ) = Σ cₖλᵏ with u_up(λ) = f(λ)·u_down(λ) through K_max;
/// empty if the two gauges are not related this way.
std::vector<BivariatePoly> gauge_factor(const PerturbationSeries& down, const PerturbationSeries& up);

template <class Scalar>
struct SeriesValue {
  Scalar s;
  Scalar t;
  Vector<Scalar> u;
};

/// Partial sums through `order` (default K_max).
template <class Scalar>
SeriesValue<Scalar> evaluate_series(const PerturbationSeries& series, const Scalar& lambda, const Scalar& b,
                                    const Scalar& g, int order = -1) {
  if (order < 0 || order > series.K_max) order = series.K_max;
  SeriesValue<Scalar> out{Scalar(0), Scalar(0), Vector<Scalar>::Zero(series.N + 1)};
  Scalar power(1);
  for (int k = 0; k <= order; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    out.s += power * series.s_corr[uk].template evaluate<Scalar>(b, g);
    out.t += power * series.t_corr[uk].template evaluate<Scalar>(b, g);
    for (int i = 0; i <= series.N; ++i) out.u(i) += power * series.u_corr[uk](i).template evaluate<Scalar>(b, g);
    power *= lambda;
  }
  return out;
}

}  // namespace qes
