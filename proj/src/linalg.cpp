#include "qes/linalg.hpp"

namespace qes {

std::vector<Eigen::Index> rref_in_place(Matrix<Rational>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Rational inv = 1 / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Eigen::Index rank(Matrix<Rational> m) { return static_cast<Eigen::Index>(rref_in_place(m).size()); }

Matrix<Rational> kernel_basis(Matrix<Rational> m) {
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  Matrix<Rational> basis = Matrix<Rational>::Zero(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const auto f = free_cols[k];
    const auto col = static_cast<Eigen::Index>(k);
    basis(f, col) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], col) = -m(static_cast<Eigen::Index>(r), f);
    }
  }
  return basis;
}

Vector<Rational> primitive_integer_form(const Vector<Rational>& v, bool positive_lead) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = mp::lcm(lcm_den, denominator(x));
  Integer content = 0;
  for (const auto& x : v) content = mp::gcd(content, Integer(numerator(x) * (lcm_den / denominator(x))));
  if (content == 0) return v;
  Rational scale(lcm_den, content);
  if (positive_lead) {
    for (const auto& x : v) {
      if (x == 0) continue;
      if (x < 0) scale = -scale;
      break;
    }
  }
  Vector<Rational> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) * scale;
  return out;
}

}  // namespace qes
