#pragma once

#include <optional>
#include <vector>

#include "hypermatch/dense.hpp"
#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

/// 0-1 incidence matrix of the listed edge columns (|V| x |cols|).
inline IntMatrix incidence_matrix(const Hypergraph& h, const std::vector<int>& cols) {
  IntMatrix a = IntMatrix::Zero(h.num_vertices(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int v : h.edge(cols[j])) a(v, static_cast<Eigen::Index>(j)) = 1;
  return a;
}

/// Rank by fraction-free (Bareiss) elimination. Destroys its copy of m.
/// Every division is exact; a nonzero remainder signals a bug.
inline int exact_rank(IntMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Int prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        Int num = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        Int q, rem;
        divide_qr(num, prev, q, rem);
        if (rem != 0) throw InternalError("Bareiss elimination: inexact division");
        m(i, j) = q;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return static_cast<int>(r);
}

/// Rank of a rational matrix: clear denominators per row (rank-preserving
/// scaling), then Bareiss.
inline int exact_rank(const RatMatrix& m) {
  IntMatrix scaled(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Int common = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) common = lcm(common, denominator(m(i, j)));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      scaled(i, j) = numerator(m(i, j)) * (common / denominator(m(i, j)));
  }
  return exact_rank(std::move(scaled));
}

/// One nonzero kernel vector of m (m * x = 0), or nullopt when the columns
/// are independent. Deterministic: reduced row echelon form, first free
/// column set to 1.
inline std::optional<RatVector> kernel_vector(RatMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    Rational inv = Rational(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (Eigen::Index c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = 1;
  Eigen::Index free_col = -1;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) {
      free_col = c;
      break;
    }
  if (free_col < 0) return std::nullopt;
  RatVector x = RatVector::Zero(cols);
  x(free_col) = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    x(pivot_col[i]) = -m(static_cast<Eigen::Index>(i), free_col);
  return x;
}

}  // namespace hypermatch
