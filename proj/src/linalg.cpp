#include "normforge/linalg.hpp"

#include <utility>

namespace normforge {

std::vector<Index> rref(RatMat& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index p = -1;
    for (Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    Rat piv = m(row, col);
    for (Index j = col; j < m.cols(); ++j) {
      if (m(row, j) != 0) m(row, j) /= piv;
    }
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rat f = m(r, col);
      for (Index j = col; j < m.cols(); ++j) {
        if (m(row, j) != 0) m(r, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Index rank(RatMat m) { return static_cast<Index>(rref(m).size()); }

Index rank(const std::vector<RatVec>& vectors) {
  if (vectors.empty()) return 0;
  return rank(rows_to_matrix(vectors, vectors.front().size()));
}

std::vector<RatVec> null_space(const RatMat& m) {
  RatMat r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v = zeros(m.cols());
    v(free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v(pivots[i]) = -r(static_cast<Index>(i), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatMat> inverse(const RatMat& m) {
  const Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("inverse: matrix is not square");
  RatMat aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = RatMat::Identity(n, n);
  auto pivots = rref(aug);
  if (static_cast<Index>(pivots.size()) < n || pivots.back() >= n) return std::nullopt;
  return RatMat(aug.rightCols(n));
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  RatMat aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVec y = zeros(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) y(pivots[i]) = aug(static_cast<Index>(i), m.cols());
  return y;
}

RatMat rows_to_matrix(const std::vector<RatVec>& rows, Index cols) {
  RatMat m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

RatMat columns_to_matrix(const std::vector<RatVec>& columns, Index rows) {
  RatMat m(rows, static_cast<Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) m.col(static_cast<Index>(i)) = columns[i];
  return m;
}

}  // namespace normforge
