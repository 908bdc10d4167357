#pragma once

#include "normforge/rational.hpp"

#include <vector>

namespace normforge {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar objective{};
  Vec<Scalar> x;
};

/// Minimizes c.x subject to A x = b, x >= 0 with a dense two-phase simplex
/// and Bland's rule. Exact when Scalar is exact.
template <typename Scalar>
LpResult<Scalar> minimize(const Mat<Scalar>& A, const Vec<Scalar>& b, const Vec<Scalar>& c);

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  Tableau(Index rows, Index cols) : rows_(rows), cols_(cols), t_(rows + 1, std::vector<Scalar>(cols + 1)) {}

  Scalar& at(Index r, Index c) { return t_[r][c]; }
  const Scalar& at(Index r, Index c) const { return t_[r][c]; }
  Scalar& rhs(Index r) { return t_[r][cols_]; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  void pivot(Index pr, Index pc) {
    auto& prow = t_[pr];
    Scalar piv = prow[pc];
    for (auto& v : prow) {
      if (v != 0) v /= piv;
    }
    std::vector<Index> nz;
    for (Index j = 0; j <= cols_; ++j) {
      if (prow[j] != 0) nz.push_back(j);
    }
    for (Index r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      auto& row = t_[r];
      if (row[pc] == 0) continue;
      Scalar f = row[pc];
      for (Index j : nz) row[j] -= f * prow[j];
    }
  }

 private:
  Index rows_;
  Index cols_;
  std::vector<std::vector<Scalar>> t_;  // last row: objective (reduced costs)
};

// Runs Bland simplex on the tableau whose last row holds reduced costs of the
// minimization (negative entry = improving). Only columns < allowed_cols may
// enter. Returns false when unbounded.
template <typename Scalar>
bool run_bland(Tableau<Scalar>& t, std::vector<Index>& basis, Index allowed_cols) {
  const Index m = t.rows();
  for (;;) {
    Index enter = -1;
    for (Index j = 0; j < allowed_cols; ++j) {
      if (t.at(m, j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    Index leave = -1;
    Scalar best{};
    for (Index r = 0; r < m; ++r) {
      if (t.at(r, enter) > 0) {
        Scalar ratio = t.rhs(r) / t.at(r, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

}  // namespace detail

template <typename Scalar>
LpResult<Scalar> minimize(const Mat<Scalar>& A, const Vec<Scalar>& b, const Vec<Scalar>& c) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (b.size() != m || c.size() != n) throw DimensionMismatch("minimize: inconsistent LP shapes");
  LpResult<Scalar> result;

  // Columns: n structural, then m artificials.
  detail::Tableau<Scalar> t(m, n + m);
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index r = 0; r < m; ++r) {
    bool flip = b(r) < 0;
    for (Index j = 0; j < n; ++j) {
      if (A(r, j) != 0) t.at(r, j) = flip ? Scalar(-A(r, j)) : A(r, j);
    }
    t.at(r, n + r) = 1;
    t.rhs(r) = flip ? Scalar(-b(r)) : b(r);
    basis[r] = n + r;
  }
  // Phase 1 objective: sum of artificials, expressed in reduced form.
  for (Index j = 0; j <= n + m; ++j) {
    Scalar s{};
    if (j < n || j == n + m) {
      for (Index r = 0; r < m; ++r) s -= t.at(r, j);
    }
    t.at(m, j) = s;
  }
  detail::run_bland(t, basis, n + m);
  if (t.at(m, n + m) != 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // Drive artificial variables out of the basis where possible.
  std::vector<bool> redundant(static_cast<std::size_t>(m), false);
  for (Index r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    Index col = -1;
    for (Index j = 0; j < n; ++j) {
      if (t.at(r, j) != 0) {
        col = j;
        break;
      }
    }
    if (col < 0) {
      redundant[r] = true;
      continue;
    }
    t.pivot(r, col);
    basis[r] = col;
  }
  // Phase 2 objective row.
  for (Index j = 0; j <= n + m; ++j) t.at(m, j) = (j < n) ? c(j) : Scalar{};
  for (Index r = 0; r < m; ++r) {
    if (redundant[r]) continue;
    Index bj = basis[r];
    if (bj >= n) continue;
    Scalar cb = c(bj);
    if (cb == 0) continue;
    for (Index j = 0; j <= n + m; ++j) {
      if (t.at(r, j) != 0) t.at(m, j) -= cb * t.at(r, j);
    }
  }
  // Artificials may not re-enter; redundant rows keep their artificial basis
  // variable at zero.
  if (!detail::run_bland(t, basis, n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = Vec<Scalar>::Zero(n);
  for (Index r = 0; r < m; ++r) {
    if (basis[r] < n) result.x(basis[r]) = t.rhs(r);
  }
  result.objective = Scalar{};
  for (Index j = 0; j < n; ++j) {
    if (result.x(j) != 0) result.objective += c(j) * result.x(j);
  }
  return result;
}

}  // namespace normforge
