#pragma once

// Physical model of the quartic-plus-Kratzer radial problem
//
//   V(r) = A r^4 + B r^3 + C r^2 + D r + F/r + G/r^2
//
// and its terminated Taylor-series representation. Maps couplings to the
// exponential/power ansatz parameters, assembles the (N+2)×(N+1) banded
// recurrence matrices and converts spectral parameters (s, t) back to (E, F).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qes/dense.hpp"
#include "qes/exactnum/bivariate_poly.hpp"
#include "qes/exactnum/rational.hpp"

namespace qes {

/// A real number that is also carried exactly whenever it is rational.
/// Arithmetic keeps the exact representation as long as every operand has one.
class RealValue {
 public:
  RealValue() : value_(0), exact_(Rational(0)) {}
  RealValue(const Rational& q) : value_(convert<Real>(q)), exact_(q) {}  // NOLINT
  RealValue(long n) : RealValue(Rational(n)) {}                          // NOLINT
  static RealValue inexact(const Real& x) {
    RealValue v;
    v.value_ = x;
    v.exact_.reset();
    return v;
  }

  const Real& value() const { return value_; }
  double to_double() const { return value_.convert_to<double>(); }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }

  RealValue operator-() const;
  friend RealValue operator+(const RealValue& a, const RealValue& b);
  friend RealValue operator-(const RealValue& a, const RealValue& b);
  friend RealValue operator*(const RealValue& a, const RealValue& b);
  /// ArithmeticError on an exactly-zero divisor.
  friend RealValue operator/(const RealValue& a, const RealValue& b);

  std::string str() const;

 private:
  Real value_;
  std::optional<Rational> exact_;
};

RealValue sqrt(const RealValue& x);
RealValue cbrt(const RealValue& x);

struct PhysicalParams {
  RealValue A;  ///< r^4 coupling, must be positive
  RealValue B;  ///< r^3
  RealValue C;  ///< r^2
  RealValue G;  ///< r^-2, combined with ell must exceed -1/4
  int ell = 0;  ///< angular momentum
};

struct AnsatzParams {
  PhysicalParams couplings;
  RealValue alpha;   ///< sqrt(A)
  RealValue beta;    ///< B / 2α
  RealValue gamma;   ///< (C - β²) / 2α
  RealValue l_eff;   ///< -1/2 + sqrt(G + (ℓ+1/2)²)
  RealValue Omega;   ///< l_eff + 1
  RealValue mu;      ///< (Ω/α)^{1/3}
  RealValue tau;     ///< (Ω²α)^{1/3}
  RealValue lambda;  ///< 1/Ω
  RealValue b;       ///< β μ², formal symbol value
  RealValue g;       ///< γ μ, formal symbol value
  std::map<int, RealValue> D_of_N;

  /// Termination-admitting linear coupling D(N) = -2α(N + l + 2) + 2βγ.
  RealValue D(int N) const;
};

/// Ansatz parameters for the given couplings; fills D_of_N for N.
/// DomainError when A <= 0 or G + (ℓ+1/2)² <= 0.
AnsatzParams derive_ansatz(const PhysicalParams& params, int N);

/// Builds a physical model realising prescribed formal values (λ, b, g):
/// Ω = 1/λ, l = Ω - 1, the given α (default 1), μ and τ from α and Ω, then
/// β = b/μ², γ = g/μ and the couplings A = α², B = 2αβ, C = β² + 2αγ,
/// G = l(l+1) - ℓ(ℓ+1). Requires 0 < λ < 2.
AnsatzParams ansatz_from_formal(const Rational& lambda, const Rational& b, const Rational& g, int N,
                                int ell = 0, const Rational& alpha = 1);

/// Four-diagonal (N+2)×(N+1) matrix in diagonal storage. Row i holds
/// subsub at column i-2, sub at i-1, main at i and super at i+1.
template <class Scalar>
class BandMatrix {
 public:
  BandMatrix() = default;
  explicit BandMatrix(int N)
      : N_(N), subsub_(N, Scalar(0)), sub_(N + 1, Scalar(0)), main_(N + 1, Scalar(0)), super_(N, Scalar(0)) {}

  int N() const { return N_; }
  Eigen::Index rows() const { return N_ + 2; }
  Eigen::Index cols() const { return N_ + 1; }

  /// Band accessors, indexed by row: subsub rows 2..N+1, sub rows 1..N+1,
  /// main rows 0..N, super rows 0..N-1.
  Scalar& subsub(int row) { return subsub_[static_cast<std::size_t>(row - 2)]; }
  Scalar& sub(int row) { return sub_[static_cast<std::size_t>(row - 1)]; }
  Scalar& main(int row) { return main_[static_cast<std::size_t>(row)]; }
  Scalar& super(int row) { return super_[static_cast<std::size_t>(row)]; }
  const Scalar& subsub(int row) const { return subsub_[static_cast<std::size_t>(row - 2)]; }
  const Scalar& sub(int row) const { return sub_[static_cast<std::size_t>(row - 1)]; }
  const Scalar& main(int row) const { return main_[static_cast<std::size_t>(row)]; }
  const Scalar& super(int row) const { return super_[static_cast<std::size_t>(row)]; }

  Scalar at(int row, int col) const {
    switch (col - row) {
      case -2: return row >= 2 && row <= N_ + 1 ? subsub(row) : Scalar(0);
      case -1: return row >= 1 && row <= N_ + 1 ? sub(row) : Scalar(0);
      case 0: return row <= N_ ? main(row) : Scalar(0);
      case 1: return row <= N_ - 1 ? super(row) : Scalar(0);
      default: return Scalar(0);
    }
  }

  Matrix<Scalar> dense() const {
    Matrix<Scalar> m(rows(), cols());
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) m(i, j) = at(i, j);
    return m;
  }

  /// Q·u for a column vector of length N+1; the result scalar is the vector's.
  template <class T>
  Vector<T> apply(const Vector<T>& u) const {
    Vector<T> out(rows());
    for (int i = 0; i < rows(); ++i) {
      T acc = T(0);
      for (int j = std::max(0, i - 2); j <= std::min(N_, i + 1); ++j) acc += at(i, j) * u(j);
      out(i) = acc;
    }
    return out;
  }

  /// vᵀ·Q for a row vector of length N+2.
  template <class T>
  Vector<T> apply_left(const Vector<T>& v) const {
    Vector<T> out(cols());
    for (int j = 0; j < cols(); ++j) {
      T acc = T(0);
      for (int i = std::max(0, j - 1); i <= std::min(N_ + 1, j + 2); ++i) acc += at(i, j) * v(i);
      out(j) = acc;
    }
    return out;
  }

 private:
  int N_ = 0;
  std::vector<Scalar> subsub_, sub_, main_, super_;
};

/// The split Q(λ) = Q⁽⁰⁾(s,t) + λ Q⁽¹⁾ of the rescaled recurrence matrix.
/// `base` is Q⁽⁰⁾(0,0) (integer bands N..1 below, 1..N above); the s and t
/// bands are supplied at evaluation. `first_order` holds Q⁽¹⁾ in the formal
/// symbols b = βμ² and g = γμ.
struct PseudoHamiltonian {
  int N = 0;
  BandMatrix<Rational> base;
  BandMatrix<BivariatePoly> first_order;

  template <class Scalar>
  BandMatrix<Scalar> zero_order(const Scalar& s, const Scalar& t) const {
    BandMatrix<Scalar> q(N);
    for (int i = 2; i <= N + 1; ++i) q.subsub(i) = convert<Scalar>(base.subsub(i));
    for (int i = 0; i <= N - 1; ++i) q.super(i) = convert<Scalar>(base.super(i));
    for (int i = 1; i <= N + 1; ++i) q.sub(i) = t;
    for (int i = 0; i <= N; ++i) q.main(i) = s;
    return q;
  }

  /// Q⁽⁰⁾(s,t) + λ·Q⁽¹⁾(b,g) at numeric or exact values.
  template <class Scalar>
  BandMatrix<Scalar> full(const Scalar& lambda, const Scalar& s, const Scalar& t, const Scalar& b,
                          const Scalar& g) const {
    BandMatrix<Scalar> q = zero_order(s, t);
    for (int i = 2; i <= N + 1; ++i) q.subsub(i) += lambda * first_order.subsub(i).template evaluate<Scalar>(b, g);
    for (int i = 1; i <= N + 1; ++i) q.sub(i) += lambda * first_order.sub(i).template evaluate<Scalar>(b, g);
    for (int i = 0; i <= N; ++i) q.main(i) += lambda * first_order.main(i).template evaluate<Scalar>(b, g);
    for (int i = 0; i <= N - 1; ++i) q.super(i) += lambda * first_order.super(i).template evaluate<Scalar>(b, g);
    return q;
  }
};

PseudoHamiltonian build_split(int N);
/// Same matrices; the ansatz only fixes the numeric values of λ, b, g, which
/// are applied later through PseudoHamiltonian::full.
PseudoHamiltonian build_split(const AnsatzParams& ansatz, int N);

/// Non-square quasi-unit matrices with Q⁽⁰⁾(s,t) = Q⁽⁰⁾(0,0) + s·J + t·K.
struct SelectorPair {
  Matrix<Rational> J;  ///< identity on rows 0..N
  Matrix<Rational> K;  ///< identity on rows 1..N+1 (shifted down by one)
};

SelectorPair selectors(int N);

/// J·u: u placed in rows 0..N, zero in row N+1.
template <class T>
Vector<T> select_J(const Vector<T>& u) {
  Vector<T> out(u.size() + 1);
  for (Eigen::Index i = 0; i < u.size(); ++i) out(i) = u(i);
  out(u.size()) = T(0);
  return out;
}

/// K·u: zero in row 0, u placed in rows 1..N+1.
template <class T>
Vector<T> select_K(const Vector<T>& u) {
  Vector<T> out(u.size() + 1);
  out(0) = T(0);
  for (Eigen::Index i = 0; i < u.size(); ++i) out(i + 1) = u(i);
  return out;
}

struct PhysicalSpectrum {
  RealValue E;
  RealValue F;
};

/// Inverts s = S/τ, t = μT/τ with E = 2T + β(2l+3) - γ² and F = -2γΩ - 2S:
///   E = 2tτ/μ + β(2l+3) - γ²,  F = -2γΩ - 2sτ.
PhysicalSpectrum backout_physical(const RealValue& s, const RealValue& t, const AnsatzParams& ansatz);

/// Unscaled Taylor recurrence matrix: row k carries R_k, T_k, S_k, P_k at
/// columns k-2..k+1 with
///   R_k = 2α(N+2-k), T_k = E + γ² - β(2k+2l+1),
///   S_k = -2γ(k+l+1) - F, P_k = (k+1)(k+2l+2).
template <class Scalar>
Matrix<Scalar> recurrence_matrix(int N, const Scalar& alpha, const Scalar& beta, const Scalar& gamma,
                                 const Scalar& l, const Scalar& E, const Scalar& F) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(N + 2, N + 1);
  for (int k = 0; k <= N + 1; ++k) {
    const Scalar kk(k);
    if (k - 2 >= 0) m(k, k - 2) = Scalar(2) * alpha * Scalar(N + 2 - k);
    if (k - 1 >= 0) m(k, k - 1) = E + gamma * gamma - beta * (Scalar(2) * kk + Scalar(2) * l + Scalar(1));
    if (k <= N) m(k, k) = Scalar(-2) * gamma * (kk + l + Scalar(1)) - F;
    if (k + 1 <= N) m(k, k + 1) = (kk + Scalar(1)) * (kk + Scalar(2) * l + Scalar(2));
  }
  return m;
}

/// Coordinate rescaling ω_n = u_n / μ^n and row normalization: entry (k, n)
/// is multiplied by μ^{k-n} / (2τ). Maps recurrence_matrix onto Q⁽⁰⁾ + λQ⁽¹⁾.
template <class Scalar>
Matrix<Scalar> rescale_recurrence(const Matrix<Scalar>& raw, const Scalar& mu, const Scalar& tau) {
  Matrix<Scalar> out = raw;
  for (Eigen::Index k = 0; k < raw.rows(); ++k) {
    for (Eigen::Index n = 0; n < raw.cols(); ++n) {
      if (raw(k, n) == Scalar(0)) continue;
      Scalar f = Scalar(1) / (Scalar(2) * tau);
      for (Eigen::Index i = 0; i < k - n; ++i) f *= mu;
      for (Eigen::Index i = 0; i < n - k; ++i) f /= mu;
      out(k, n) = raw(k, n) * f;
    }
  }
  return out;
}

}  // namespace qes
