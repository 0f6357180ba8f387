#pragma once

#include <string>
#include <vector>

#include "hypermatch/instance.hpp"
#include "hypermatch/linalg.hpp"

namespace hypermatch {

/// Maximization LP: max objective . x subject to rows * x <= rhs and
/// lower <= x <= upper, all data exact rationals.
struct LinearProgram {
  RatVector objective;
  RatMatrix rows;
  RatVector rhs;
  RatVector lower;
  RatVector upper;

  Eigen::Index num_vars() const { return objective.size(); }
  Eigen::Index num_rows() const { return rows.rows(); }
};

/// Optimal extreme point. Tight-set indexing: row r is index r; the lower
/// bound of variable i is num_rows + i; the upper bound is
/// num_rows + num_vars + i.
struct LpResult {
  Rational value;
  FractionalSolution solution;
  std::vector<int> tight;
};

/// Naive relaxation {0 <= x <= c, Ax <= b} with objective w.
inline LinearProgram build_bmatch_lp(const BMatchInstance& inst) {
  if (!inst.validated) throw ValidationError("build_bmatch_lp: instance not validated");
  const int n = inst.h.num_edges();
  const int m = inst.h.num_vertices();
  LinearProgram lp;
  lp.objective = inst.w;
  lp.rows = RatMatrix::Zero(m, n);
  lp.rhs = RatVector(m);
  for (int v = 0; v < m; ++v) {
    lp.rhs(v) = Rational(inst.b[v]);
    for (int e : inst.h.incident(v)) lp.rows(v, e) = 1;
  }
  lp.lower = RatVector::Zero(n);
  lp.upper = RatVector(n);
  for (int e = 0; e < n; ++e) lp.upper(e) = Rational(inst.c[e]);
  return lp;
}

/// Demand relaxation {0 <= x <= 1, A[d]x <= b}: the column of edge e is its
/// incidence column scaled by d_e.
inline LinearProgram build_demand_lp(const DemandInstance& inst) {
  if (!inst.validated) throw ValidationError("build_demand_lp: instance not validated");
  const int n = inst.h.num_edges();
  const int m = inst.h.num_vertices();
  LinearProgram lp;
  lp.objective = inst.w;
  lp.rows = RatMatrix::Zero(m, n);
  lp.rhs = RatVector(m);
  for (int v = 0; v < m; ++v) lp.rhs(v) = Rational(inst.b[v]);
  for (int e = 0; e < n; ++e)
    for (int v : inst.h.edge(e)) lp.rows(v, e) = Rational(inst.d[e]);
  lp.lower = RatVector::Zero(n);
  lp.upper = RatVector::Constant(n, Rational(1));
  return lp;
}

/// Tight constraint/bound indices of x, in the LpResult indexing.
inline std::vector<int> tight_set(const LinearProgram& lp, const RatVector& x) {
  std::vector<int> tight;
  const Eigen::Index m = lp.num_rows(), n = lp.num_vars();
  for (Eigen::Index r = 0; r < m; ++r) {
    Rational lhs = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(lp.rows(r, j) == 0)) lhs += lp.rows(r, j) * x(j);
    if (lhs == lp.rhs(r)) tight.push_back(static_cast<int>(r));
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (x(i) == lp.lower(i)) tight.push_back(static_cast<int>(m + i));
  for (Eigen::Index i = 0; i < n; ++i)
    if (x(i) == lp.upper(i)) tight.push_back(static_cast<int>(m + n + i));
  return tight;
}

/// Vertex certificate: the tight rows/bounds must have full column rank.
inline bool certify_vertex(const LinearProgram& lp, const LpResult& res) {
  const Eigen::Index m = lp.num_rows(), n = lp.num_vars();
  RatMatrix t(static_cast<Eigen::Index>(res.tight.size()), n);
  for (std::size_t i = 0; i < res.tight.size(); ++i) {
    int idx = res.tight[i];
    t.row(static_cast<Eigen::Index>(i)).setZero();
    if (idx < m) {
      t.row(static_cast<Eigen::Index>(i)) = lp.rows.row(idx);
    } else {
      Eigen::Index var = (idx < m + n) ? idx - m : idx - m - n;
      t(static_cast<Eigen::Index>(i), var) = 1;
    }
  }
  return exact_rank(t) == static_cast<int>(n);
}

struct SupportSplit {
  IntegralSolution integer_part;     // floor of x*
  FractionalSolution fractional_part;  // x* - floor(x*), in (0,1) on the support
  std::vector<int> support;          // edges with fractional value, ascending
};

/// Splits an extreme optimum into integer and fractional parts and certifies
/// that the support's incidence columns are linearly independent (guaranteed
/// for a vertex; failure signals a solver bug).
inline SupportSplit fractional_support_split(const Hypergraph& h, const LpResult& res) {
  const Eigen::Index n = res.solution.values.size();
  SupportSplit out;
  out.integer_part.multiplicities = MultVector::Zero(n);
  out.fractional_part.values = RatVector::Zero(n);
  for (Eigen::Index e = 0; e < n; ++e) {
    const Rational& x = res.solution.values(e);
    Int fl = floor_int(x);
    out.integer_part.multiplicities(e) = static_cast<std::int64_t>(fl);
    Rational frac = x - Rational(fl);
    if (!(frac == 0)) {
      out.fractional_part.values(e) = frac;
      out.support.push_back(static_cast<int>(e));
    }
  }
  if (!out.support.empty()) {
    int rank = exact_rank(incidence_matrix(h, out.support));
    if (rank != static_cast<int>(out.support.size()))
      throw InternalError("fractional support has dependent incidence columns (rank " +
                          std::to_string(rank) + " of " + std::to_string(out.support.size()) +
                          "); non-vertex LP solution");
  }
  return out;
}

}  // namespace hypermatch
