#include "qes/zeroorder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "qes/errors.hpp"

namespace qes {

namespace {

// ---------------------------------------------------------------------------
// Modular prefilter. Over F_p with p ≡ 1 (mod 3) the element √-3 exists, so
// every half-Eisenstein value has an image and the u_0 = 1 recurrence can be
// run exactly mod p. A true root always reduces to a modular root, so the
// filter never drops one; survivors are re-verified in exact arithmetic.

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kPrime = (u64{1} << 61) - 1;

u64 mulmod(u64 a, u64 b) {
  u128 z = static_cast<u128>(a) * b;
  u64 lo = static_cast<u64>(z & kPrime);
  u64 hi = static_cast<u64>(z >> 61);
  u64 r = lo + hi;
  return r >= kPrime ? r - kPrime : r;
}
u64 addmod(u64 a, u64 b) {
  u64 r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
u64 powmod(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a) { return powmod(a, kPrime - 2); }
u64 from_signed(long x) {
  long m = x % static_cast<long>(kPrime);
  return m < 0 ? static_cast<u64>(m + static_cast<long>(kPrime)) : static_cast<u64>(m);
}

struct ModularField {
  u64 sqrt_minus3 = 0;
  u64 inv2 = 0;

  ModularField() {
    for (u64 a = 2;; ++a) {
      u64 w = powmod(a, (kPrime - 1) / 3);
      if (w != 1) {
        sqrt_minus3 = addmod(mulmod(2, w), 1);  // (2ω + 1)² = -3
        break;
      }
    }
    inv2 = invmod(2);
  }

  u64 image(long p, long q) const { return mulmod(addmod(from_signed(p), mulmod(from_signed(q), sqrt_minus3)), inv2); }
};

bool modular_root(int N, u64 s, u64 t, const std::vector<u64>& inverse, std::vector<u64>& u) {
  const u64 zero = 0;
  u.assign(static_cast<std::size_t>(N) + 1, 0);
  u[0] = 1;
  auto at = [&](int i) { return i >= 0 ? u[static_cast<std::size_t>(i)] : zero; };
  for (int k = 0; k < N; ++k) {
    u64 acc = mulmod(s, at(k));
    acc = addmod(acc, mulmod(t, at(k - 1)));
    acc = addmod(acc, mulmod(static_cast<u64>(N + 2 - k), at(k - 2)));
    u[static_cast<std::size_t>(k) + 1] = acc == 0 ? 0 : mulmod(kPrime - acc, inverse[static_cast<std::size_t>(k) + 1]);
  }
  u64 row_n = addmod(addmod(mulmod(2, at(N - 2)), mulmod(t, at(N - 1))), mulmod(s, at(N)));
  if (row_n != 0) return false;
  u64 row_last = addmod(at(N - 1), mulmod(t, at(N)));
  return row_last == 0;
}

// ---------------------------------------------------------------------------
// Exact recurrence in Z[ω]. With S = 2s, T = 2t (always Eisenstein integers)
// and v_k = 2^k k! u_k:
//   v_{k+1} = -[S v_k + 2k T v_{k-1} + 8 k(k-1) (N+2-k) v_{k-2}],
// and the trailing rows become
//   16 N(N-1) v_{N-2} + 2N T v_{N-1} + S v_N = 0,   4N v_{N-1} + T v_N = 0.

std::vector<HalfEisenstein> scaled_kernel(int N, const HalfEisenstein& S, const HalfEisenstein& T) {
  std::vector<HalfEisenstein> v(static_cast<std::size_t>(N) + 1);
  v[0] = HalfEisenstein::from_integer(1);
  auto at = [&](int i) { return i >= 0 ? v[static_cast<std::size_t>(i)] : HalfEisenstein{}; };
  for (int k = 0; k < N; ++k) {
    HalfEisenstein acc = S * at(k);
    acc += Integer(2 * k) * (T * at(k - 1));
    acc += Integer(8L * k * (k - 1) * (N + 2 - k)) * at(k - 2);
    v[static_cast<std::size_t>(k) + 1] = -acc;
  }
  return v;
}

std::pair<HalfEisenstein, HalfEisenstein> scaled_trailing_rows(int N, const HalfEisenstein& S,
                                                               const HalfEisenstein& T,
                                                               const std::vector<HalfEisenstein>& v) {
  auto at = [&](int i) { return i >= 0 ? v[static_cast<std::size_t>(i)] : HalfEisenstein{}; };
  HalfEisenstein row_n = Integer(16L * N * (N - 1)) * at(N - 2) + Integer(2 * N) * (T * at(N - 1)) + S * at(N);
  HalfEisenstein row_last = Integer(4 * N) * at(N - 1) + T * at(N);
  return {row_n, row_last};
}

HalfEisenstein doubled(const HalfEisenstein& z) { return Integer(2) * z; }

/// Both secular determinants vanish; evaluated on 2·Q⁽⁰⁾ so that every
/// entry is an Eisenstein integer.
bool secular_dets_vanish(int N, const HalfEisenstein& s, const HalfEisenstein& t) {
  Matrix<HalfEisenstein> q = build_split(N).zero_order(s, t).dense();
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) q(i, j) = doubled(q(i, j));
  }
  return determinant<HalfEisenstein>(q.topRows(N + 1)).is_zero() &&
         determinant<HalfEisenstein>(q.bottomRows(N + 1)).is_zero();
}

std::optional<int> branch_of(int N, const HalfEisenstein& s, const HalfEisenstein& t) {
  if (!s.is_real() || s != t) return std::nullopt;
  if (mp::bit_test(mp::abs(s.p()), 0)) return std::nullopt;
  const Integer value = s.p() / 2;
  const Integer diff = Integer(N) - value;
  if (diff < 0 || diff % 3 != 0) return std::nullopt;
  const long n = (diff / 3).convert_to<long>();
  if (n > N / 2) return std::nullopt;
  return static_cast<int>(n);
}

RootPair make_root(int N, HalfEisenstein s, HalfEisenstein t) {
  RootPair r{std::move(s), std::move(t), N, std::nullopt};
  r.branch = branch_of(N, r.s, r.t);
  return r;
}

bool root_less(const RootPair& a, const RootPair& b) {
  if (a.s != b.s) return a.s < b.s;
  return a.t < b.t;
}

// ---------------------------------------------------------------------------
// Numeric sweep: Newton on the two trailing-row residuals as functions of
// (s, t) ∈ C², with derivatives carried through the recurrence.

using cplx = std::complex<double>;

struct Residual {
  std::array<cplx, 2> value;
  std::array<std::array<cplx, 2>, 2> jacobian;  // [row][d/ds, d/dt]
  std::array<double, 2> scale;
};

Residual trailing_residual(int N, cplx s, cplx t) {
  const std::size_t n1 = static_cast<std::size_t>(N) + 1;
  std::vector<cplx> u(n1), us(n1), ut(n1);
  u[0] = 1.0;
  auto get = [](const std::vector<cplx>& x, int i) { return i >= 0 ? x[static_cast<std::size_t>(i)] : cplx{}; };
  for (int k = 0; k < N; ++k) {
    const double c = N + 2 - k;
    const double inv = 1.0 / (k + 1);
    const auto K = static_cast<std::size_t>(k) + 1;
    u[K] = -(s * get(u, k) + t * get(u, k - 1) + c * get(u, k - 2)) * inv;
    us[K] = -(get(u, k) + s * get(us, k) + t * get(us, k - 1) + c * get(us, k - 2)) * inv;
    ut[K] = -(s * get(ut, k) + get(u, k - 1) + t * get(ut, k - 1) + c * get(ut, k - 2)) * inv;
  }
  Residual r;
  r.value[0] = 2.0 * get(u, N - 2) + t * get(u, N - 1) + s * get(u, N);
  r.jacobian[0][0] = 2.0 * get(us, N - 2) + t * get(us, N - 1) + get(u, N) + s * get(us, N);
  r.jacobian[0][1] = 2.0 * get(ut, N - 2) + get(u, N - 1) + t * get(ut, N - 1) + s * get(ut, N);
  r.scale[0] = 2.0 * std::abs(get(u, N - 2)) + std::abs(t * get(u, N - 1)) + std::abs(s * get(u, N)) + 1.0;
  r.value[1] = get(u, N - 1) + t * get(u, N);
  r.jacobian[1][0] = get(us, N - 1) + t * get(us, N);
  r.jacobian[1][1] = get(ut, N - 1) + get(u, N) + t * get(ut, N);
  r.scale[1] = std::abs(get(u, N - 1)) + std::abs(t * get(u, N)) + 1.0;
  return r;
}

std::optional<std::pair<cplx, cplx>> newton_from(int N, cplx s, cplx t) {
  for (int iter = 0; iter < 200; ++iter) {
    const Residual r = trailing_residual(N, s, t);
    const cplx det = r.jacobian[0][0] * r.jacobian[1][1] - r.jacobian[0][1] * r.jacobian[1][0];
    if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det))) return std::nullopt;
    const cplx ds = (r.value[0] * r.jacobian[1][1] - r.value[1] * r.jacobian[0][1]) / det;
    const cplx dt = (r.jacobian[0][0] * r.value[1] - r.jacobian[1][0] * r.value[0]) / det;
    s -= ds;
    t -= dt;
    if (!std::isfinite(std::abs(s)) || !std::isfinite(std::abs(t))) return std::nullopt;
    if (std::abs(ds) + std::abs(dt) < 1e-13 * (1.0 + std::abs(s) + std::abs(t))) {
      const Residual fin = trailing_residual(N, s, t);
      if (std::abs(fin.value[0]) <= 1e-8 * fin.scale[0] && std::abs(fin.value[1]) <= 1e-8 * fin.scale[1]) {
        return std::make_pair(s, t);
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<std::pair<cplx, cplx>> numeric_sweep(int N, int starts, unsigned seed) {
  std::mt19937 rng(seed);
  const double radius = N + 1.0;
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::vector<std::pair<cplx, cplx>> found;
  for (int i = 0; i < starts; ++i) {
    const cplx s0(coord(rng), coord(rng));
    const cplx t0(coord(rng), coord(rng));
    auto root = newton_from(N, s0, t0);
    if (!root) continue;
    const bool seen = std::any_of(found.begin(), found.end(), [&](const auto& f) {
      return std::abs(f.first - root->first) + std::abs(f.second - root->second) <
             1e-6 * (1.0 + std::abs(root->first) + std::abs(root->second));
    });
    if (!seen) found.push_back(*root);
  }
  return found;
}

}  // namespace

RootPair real_root(int N, int n) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  if (n < 0 || n > N / 2) throw DomainError("branch index n must lie in 0..floor(N/2)");
  auto s = HalfEisenstein::from_integer(N - 3 * n);
  return RootPair{s, s, N, n};
}

bool is_exact_root(int N, const HalfEisenstein& s, const HalfEisenstein& t) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  const HalfEisenstein S = doubled(s), T = doubled(t);
  const auto v = scaled_kernel(N, S, T);
  const auto [row_n, row_last] = scaled_trailing_rows(N, S, T, v);
  if (!row_n.is_zero() || !row_last.is_zero()) return false;
  if (!secular_dets_vanish(N, s, t)) {
    throw InconsistencyError("kernel vector exists but a secular determinant does not vanish");
  }
  return true;
}

std::vector<RootPair> real_roots(int N) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  std::vector<RootPair> out;
  for (int n = 0; n <= N / 2; ++n) {
    RootPair r = real_root(N, n);
    if (!is_exact_root(N, r.s, r.t)) {
      throw InconsistencyError("s = t = N - 3n fails exact verification at N=" + std::to_string(N) +
                               ", n=" + std::to_string(n));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RootPair> real_axis_roots(int N, int box_factor) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  const long box = std::max(2L, static_cast<long>(box_factor) * N);
  std::vector<RootPair> out;
  for (long ps = -box; ps <= box; ++ps) {
    for (long pt = -box; pt <= box; ++pt) {
      HalfEisenstein s(Integer(ps), Integer(0)), t(Integer(pt), Integer(0));
      if (is_exact_root(N, s, t)) out.push_back(make_root(N, s, t));
    }
  }
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

RootEnumeration enumerate_roots_checked(int N, const EnumerateOptions& options) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  const long box = std::max(2L, static_cast<long>(options.box_factor) * N);

  static const ModularField field;
  std::vector<u64> inverse(static_cast<std::size_t>(N) + 2, 1);
  for (int k = 1; k <= N + 1; ++k) inverse[static_cast<std::size_t>(k)] = invmod(static_cast<u64>(k));

  std::vector<u64> images;
  std::vector<std::pair<long, long>> points;
  for (long p = -box; p <= box; ++p) {
    for (long q = -box; q <= box; ++q) {
      images.push_back(field.image(p, q));
      points.emplace_back(p, q);
    }
  }

  RootEnumeration result;
  std::vector<u64> scratch;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < images.size(); ++j) {
      if (!modular_root(N, images[i], images[j], inverse, scratch)) continue;
      HalfEisenstein s(Integer(points[i].first), Integer(points[i].second));
      HalfEisenstein t(Integer(points[j].first), Integer(points[j].second));
      if (is_exact_root(N, s, t)) result.roots.push_back(make_root(N, s, t));
    }
  }
  std::sort(result.roots.begin(), result.roots.end(), root_less);

  for (const auto& r : result.roots) {
    RootPair c{r.s.conj(), r.t.conj(), N, std::nullopt};
    const bool closed = std::any_of(result.roots.begin(), result.roots.end(),
                                    [&](const RootPair& x) { return x.s == c.s && x.t == c.t; });
    if (!closed) throw InconsistencyError("lattice root set is not closed under conjugation");
  }

  if (options.numeric_check && N > 0) {
    const int starts = options.numeric_starts > 0 ? options.numeric_starts : 40 * (N + 1) * (N + 2);
    const auto numeric = numeric_sweep(N, starts, options.seed);
    result.numeric_roots = numeric.size();
    for (const auto& [s, t] : numeric) {
      const bool matched = std::any_of(result.roots.begin(), result.roots.end(), [&](const RootPair& r) {
        return std::abs(r.s.to_complex() - s) + std::abs(r.t.to_complex() - t) <
               1e-6 * (1.0 + std::abs(s) + std::abs(t));
      });
      if (!matched) {
        throw InconsistencyError("numeric sweep found a root off the lattice at N=" + std::to_string(N) + ": s=(" +
                                 std::to_string(s.real()) + "," + std::to_string(s.imag()) + ")");
      }
    }
  } else if (N == 0) {
    result.numeric_roots = result.roots.size();
  }
  return result;
}

std::vector<RootPair> enumerate_roots(int N, const EnumerateOptions& options) {
  return enumerate_roots_checked(N, options).roots;
}

CoefficientVector zero_coefficients(const RootPair& root) {
  const int N = root.N;
  if (!root.is_real()) throw DomainError("zero_coefficients needs a real root; use zero_coefficients_complex");
  const Rational s = root.s.real_part();
  const Rational t = root.t.real_part();
  Vector<Rational> u = Vector<Rational>::Zero(N + 1);
  u(0) = 1;
  auto at = [&](int i) { return i >= 0 ? u(i) : Rational(0); };
  for (int k = 0; k < N; ++k) {
    u(k + 1) = -(s * at(k) + t * at(k - 1) + Rational(N + 2 - k) * at(k - 2)) / Rational(k + 1);
  }
  const Rational row_n = 2 * at(N - 2) + t * at(N - 1) + s * at(N);
  const Rational row_last = at(N - 1) + t * at(N);
  if (row_n != 0 || row_last != 0) {
    throw NotARootError("(s, t) = (" + to_string(s) + ", " + to_string(t) + ") is not a zero-order root for N=" +
                        std::to_string(N));
  }
  CoefficientVector out;
  out.entries = primitive_integer_form(u);
  out.N = N;
  out.root = root;
  out.root.branch = branch_of(N, root.s, root.t);
  return out;
}

CoefficientVector zero_coefficients(int N, long s) {
  auto z = HalfEisenstein::from_integer(s);
  return zero_coefficients(RootPair{z, z, N, std::nullopt});
}

Vector<HalfEisenstein> zero_coefficients_complex(const RootPair& root) {
  const int N = root.N;
  const HalfEisenstein S = doubled(root.s), T = doubled(root.t);
  auto v = scaled_kernel(N, S, T);
  const auto [row_n, row_last] = scaled_trailing_rows(N, S, T, v);
  if (!row_n.is_zero() || !row_last.is_zero()) throw NotARootError("not a zero-order root: s = " + root.s.str());
  // Undo v_k = 2^k k! u_k with the integer factor 2^{N-k} N!/k!.
  Integer factor = 1;
  for (int k = N; k >= 0; --k) {
    v[static_cast<std::size_t>(k)] = factor * v[static_cast<std::size_t>(k)];
    factor *= 2 * k;
  }

  Integer content = 0;
  for (const auto& z : v) content = mp::gcd(content, mp::gcd(mp::abs(z.p()), mp::abs(z.q())));
  auto reduce = [&](const Integer& d) {
    Vector<HalfEisenstein> out(N + 1);
    for (int k = 0; k <= N; ++k) {
      const auto& z = v[static_cast<std::size_t>(k)];
      out(k) = HalfEisenstein(Integer(z.p() / d), Integer(z.q() / d));
    }
    return out;
  };
  Vector<HalfEisenstein> out = reduce(content);
  const bool stays_eisenstein = std::all_of(out.begin(), out.end(), [](const auto& z) { return z.is_eisenstein_integer(); });
  return stays_eisenstein ? out : reduce(Integer(content / 2));
}

UniPoly closed_form_wavefunction(int N, int n) {
  if (N < 0) throw DomainError("truncation degree N must be non-negative");
  if (n < 0 || n > N / 2) throw DomainError("branch index n must lie in 0..floor(N/2)");
  return pow(UniPoly{1, -1}, N - 2 * n) * pow(UniPoly{1, 1, 1}, n);
}

std::vector<std::vector<Integer>> pascal_ground(int K) {
  if (K < 0) throw DomainError("K must be non-negative");
  std::vector<std::vector<Integer>> rows{{Integer(1)}};
  for (int k = 1; k <= K; ++k) {
    const auto& prev = rows.back();
    std::vector<Integer> row(static_cast<std::size_t>(2 * k + 1));
    auto at = [&](long i) { return i >= 0 && i < static_cast<long>(prev.size()) ? prev[static_cast<std::size_t>(i)] : Integer(0); };
    for (long i = 0; i < static_cast<long>(row.size()); ++i) row[static_cast<std::size_t>(i)] = at(i) + at(i - 1) + at(i - 2);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qes
