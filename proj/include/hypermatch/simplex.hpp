#pragma once

#include <string>
#include <vector>

#include "hypermatch/linear_program.hpp"

namespace hypermatch {

namespace detail {

/// Dense dictionary simplex over exact rationals for the packing LPs:
/// all lower bounds 0, finite upper bounds, nonnegative right-hand sides,
/// so x = 0 is a basic feasible start and no phase one is needed.
/// Bland's rule on both the entering and leaving choices guarantees
/// termination without any anti-cycling perturbation.
class DictionarySimplex {
public:
  explicit DictionarySimplex(const LinearProgram& lp) : n_(lp.num_vars()) {
    const Eigen::Index m = lp.num_rows();
    rows_ = m + n_;  // upper bounds folded in as rows
    tableau_ = RatMatrix::Zero(rows_, n_ + 1);
    for (Eigen::Index r = 0; r < m; ++r) {
      tableau_.block(r, 0, 1, n_) = lp.rows.row(r);
      tableau_(r, n_) = lp.rhs(r);
    }
    for (Eigen::Index i = 0; i < n_; ++i) {
      tableau_(m + i, i) = 1;
      tableau_(m + i, n_) = lp.upper(i);
    }
    reduced_ = lp.objective;
    value_ = 0;
    basic_.resize(rows_);
    nonbasic_.resize(n_);
    for (Eigen::Index r = 0; r < rows_; ++r) basic_[r] = n_ + r;
    for (Eigen::Index j = 0; j < n_; ++j) nonbasic_[j] = j;
  }

  void run() {
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n_; ++j)
        if (reduced_(j) > 0 && (enter < 0 || nonbasic_[j] < nonbasic_[enter])) enter = j;
      if (enter < 0) return;  // optimal
      Eigen::Index leave = -1;
      Rational best_ratio = 0;
      for (Eigen::Index r = 0; r < rows_; ++r) {
        if (!(tableau_(r, enter) > 0)) continue;
        Rational ratio = tableau_(r, n_) / tableau_(r, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basic_[r] < basic_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0)
        throw InternalError("simplex: unbounded direction in a box-bounded LP");
      pivot(leave, enter);
    }
  }

  Rational value() const { return value_; }

  RatVector solution() const {
    RatVector x = RatVector::Zero(n_);
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (basic_[r] < n_) x(basic_[r]) = tableau_(r, n_);
    return x;
  }

private:
  void pivot(Eigen::Index r, Eigen::Index j) {
    const Rational inv = Rational(1) / tableau_(r, j);
    tableau_.row(r) *= inv;
    tableau_(r, j) = inv;  // column j now carries the leaving variable
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i == r || tableau_(i, j) == 0) continue;
      const Rational f = tableau_(i, j);
      tableau_.row(i) -= f * tableau_.row(r);
      tableau_(i, j) = -f * tableau_(r, j);
    }
    if (!(reduced_(j) == 0)) {
      const Rational f = reduced_(j);
      value_ += f * tableau_(r, n_);
      for (Eigen::Index k = 0; k < n_; ++k) reduced_(k) -= f * tableau_(r, k);
      reduced_(j) = -f * tableau_(r, j);
    }
    std::swap(basic_[r], nonbasic_[j]);
  }

  Eigen::Index n_;
  Eigen::Index rows_;
  RatMatrix tableau_;
  RatVector reduced_;
  Rational value_;
  std::vector<Eigen::Index> basic_;
  std::vector<Eigen::Index> nonbasic_;
};

}  // namespace detail

/// Exact optimal vertex of a packing LP. Rejects shapes outside the solver's
/// contract (x = 0 must be feasible). The returned solution is certified to
/// be a vertex by an exact rank computation on its tight set.
inline LpResult solve_to_vertex(const LinearProgram& lp) {
  const Eigen::Index n = lp.num_vars(), m = lp.num_rows();
  if (lp.rows.rows() != m || lp.rows.cols() != n || lp.rhs.size() != m ||
      lp.lower.size() != n || lp.upper.size() != n)
    throw ValidationError("solve_to_vertex: inconsistent LP dimensions");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(lp.lower(i) == 0)) throw ValidationError("solve_to_vertex: lower bounds must be 0");
    if (lp.upper(i) < 0) throw ValidationError("solve_to_vertex: negative upper bound");
  }
  for (Eigen::Index r = 0; r < m; ++r)
    if (lp.rhs(r) < 0) throw ValidationError("solve_to_vertex: negative right-hand side");

  detail::DictionarySimplex simplex(lp);
  simplex.run();

  LpResult res;
  res.value = simplex.value();
  res.solution.values = simplex.solution();
  res.tight = tight_set(lp, res.solution.values);

  // Exact sanity: constraints hold and the objective matches the tableau value.
  Rational recomputed = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (res.solution.values(i) < lp.lower(i) || res.solution.values(i) > lp.upper(i))
      throw InternalError("simplex returned an out-of-bounds coordinate");
    if (!(lp.objective(i) == 0)) recomputed += lp.objective(i) * res.solution.values(i);
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    Rational lhs = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(lp.rows(r, j) == 0)) lhs += lp.rows(r, j) * res.solution.values(j);
    if (lhs > lp.rhs(r)) throw InternalError("simplex returned an infeasible point");
  }
  if (!(recomputed == res.value)) throw InternalError("simplex objective value mismatch");
  if (n > 0 && !certify_vertex(lp, res))
    throw InternalError("simplex returned a non-vertex solution (tight-set rank deficient)");
  return res;
}

}  // namespace hypermatch
