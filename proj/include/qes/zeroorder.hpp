#pragma once

// Strong-core (λ = 0) limit: the coupled secular system
//
//   det[Jᵀ Q⁽⁰⁾(0,t) + s I] = 0,   det[Kᵀ Q⁽⁰⁾(s,0) + t I] = 0,
//
// its complete root set on the half-Eisenstein lattice, the real family
// s = t = N - 3n, integer Taylor-coefficient vectors and the factored
// closed forms (1 - x)^{N-2n} (1 + x + x²)^n.

#include <optional>
#include <utility>
#include <vector>

#include "qes/dense.hpp"
#include "qes/exactnum/half_eisenstein.hpp"
#include "qes/exactnum/unipoly.hpp"
#include "qes/linalg.hpp"
#include "qes/magyari.hpp"

namespace qes {

struct RootPair {
  HalfEisenstein s;
  HalfEisenstein t;
  int N = 0;
  /// n with s = t = N - 3n for real roots; empty for complex roots.
  std::optional<int> branch;

  bool is_real() const { return s.is_real() && t.is_real(); }
  friend bool operator==(const RootPair&, const RootPair&) = default;
};

/// Real root of branch n: s = t = N - 3n. DomainError if n is out of range.
RootPair real_root(int N, int n);

struct CoefficientVector {
  Vector<Rational> entries;  ///< u_0..u_N, coprime integers with u_0 = 1
  int N = 0;
  RootPair root;
};

/// (d1, d2) = (det[top (N+1) rows of Q⁽⁰⁾(s,t)], det[bottom (N+1) rows]).
/// Exact scalars use fraction-free elimination. HalfEisenstein inputs must
/// be Eisenstein integers (p ≡ q mod 2), otherwise LatticeError.
template <class Scalar>
std::pair<Scalar, Scalar> secular_dets(int N, const Scalar& s, const Scalar& t) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  if constexpr (std::is_same_v<Scalar, HalfEisenstein>) {
    if (!s.is_eisenstein_integer() || !t.is_eisenstein_integer()) {
      throw LatticeError("secular determinants need Eisenstein-integer arguments");
    }
  }
  const Matrix<Scalar> q = build_split(N).zero_order(s, t).dense();
  const Scalar d1 = determinant<Scalar>(q.topRows(N + 1));
  const Scalar d2 = determinant<Scalar>(q.bottomRows(N + 1));
  return {d1, d2};
}

/// Exact check that (s, t) solves the full zero-order system: a nonzero
/// kernel vector of Q⁽⁰⁾(s,t) exists. Works for any lattice point,
/// including those with p ≢ q (mod 2).
bool is_exact_root(int N, const HalfEisenstein& s, const HalfEisenstein& t);

/// s = t = N - 3n for n = 0..⌊N/2⌋, each verified exactly.
std::vector<RootPair> real_roots(int N);

struct EnumerateOptions {
  /// Lattice box |p|, |q| <= box_factor·N (at least 2).
  int box_factor = 2;
  /// Run the floating-point Newton sweep and require every root it finds to
  /// coincide with a lattice root.
  bool numeric_check = true;
  int numeric_starts = 0;  ///< 0 selects a size-dependent default
  unsigned seed = 20240917u;
};

struct RootEnumeration {
  std::vector<RootPair> roots;  ///< sorted by (s.p, s.q, t.p, t.q)
  std::size_t numeric_roots = 0;  ///< distinct roots found by the numeric sweep
};

/// Complete root set of the zero-order system on the lattice box, cross-
/// checked numerically. InconsistencyError when the numeric sweep finds a
/// root that is not a lattice root.
RootEnumeration enumerate_roots_checked(int N, const EnumerateOptions& options = {});
std::vector<RootPair> enumerate_roots(int N, const EnumerateOptions& options = {});

/// Exact scan for roots with both s and t real (q = 0) in |p| <= 2·box.
std::vector<RootPair> real_axis_roots(int N, int box_factor = 2);

/// Forward recurrence u_{k+1} = -[s u_k + t u_{k-1} + (N+2-k) u_{k-2}]/(k+1)
/// from u_0 = 1, verified against both trailing rows and rescaled to coprime
/// integers. NotARootError if the trailing rows do not vanish; DomainError for
/// complex roots.
CoefficientVector zero_coefficients(const RootPair& root);
CoefficientVector zero_coefficients(int N, long s);

/// Kernel vector for a complex root, scaled into Z[ω] with its integer
/// content removed.
Vector<HalfEisenstein> zero_coefficients_complex(const RootPair& root);

/// Expanded (1 - x)^{N-2n} (1 + x + x²)^n, x = r/μ.
UniPoly closed_form_wavefunction(int N, int n);

/// Rows 0..K of the three-neighbour Pascal triangle; row K has 2K+1 entries.
std::vector<std::vector<Integer>> pascal_ground(int K);

}  // namespace qes
