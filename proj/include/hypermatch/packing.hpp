#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypermatch/linear_program.hpp"
#include "hypermatch/simplex.hpp"

namespace hypermatch {

/// One term of an alpha-convex combination: positive mass on an integral
/// solution (per-edge multiplicities).
struct CombTerm {
  Rational lambda;
  MultVector solution;
};

/// alpha-convex combination: multipliers summing to alpha applied to integral
/// solutions. The combination value sum(lambda_i * x^i) is maintained
/// incrementally and re-checked against a recomputation on demand.
struct AlphaConvexCombination {
  Rational alpha;
  std::vector<CombTerm> terms;
  RatVector value;  // sum of lambda_i * x^i

  RatVector recompute_value() const {
    RatVector v = RatVector::Zero(value.size());
    for (const auto& t : terms)
      for (Eigen::Index e = 0; e < t.solution.size(); ++e)
        if (t.solution(e) != 0) v(e) += t.lambda * Rational(t.solution(e));
    return v;
  }

  Rational lambda_sum() const {
    Rational s = 0;
    for (const auto& t : terms) s += t.lambda;
    return s;
  }
};

/// Single term (alpha, all-zero solution).
inline AlphaConvexCombination trivial_combination(const Rational& alpha,
                                                  Eigen::Index num_edges) {
  if (alpha < 1) throw ValidationError("trivial_combination: alpha must be >= 1");
  AlphaConvexCombination comb;
  comb.alpha = alpha;
  comb.terms.push_back({alpha, MultVector::Zero(num_edges)});
  comb.value = RatVector::Zero(num_edges);
  return comb;
}

/// Replaces term `index` by (portion, x) followed by (lambda - portion, x).
/// Mass and value are unchanged.
inline void split_term(AlphaConvexCombination& comb, int index, const Rational& portion) {
  if (index < 0 || index >= static_cast<int>(comb.terms.size()))
    throw ValidationError("split_term: index out of range");
  const Rational lambda = comb.terms[index].lambda;
  if (!(portion > 0) || !(portion < lambda))
    throw ValidationError("split_term: portion must lie strictly inside (0, lambda)");
  CombTerm rest{lambda - portion, comb.terms[index].solution};
  comb.terms[index].lambda = portion;
  comb.terms.insert(comb.terms.begin() + index + 1, std::move(rest));
}

/// Merges adjacent-by-identity terms: equal solutions collapse to one term
/// (first occurrence position), masses added.
inline void merge_identical_terms(AlphaConvexCombination& comb) {
  std::vector<CombTerm> merged;
  for (auto& t : comb.terms) {
    bool found = false;
    for (auto& m : merged)
      if (m.solution == t.solution) {
        m.lambda += t.lambda;
        found = true;
        break;
      }
    if (!found) merged.push_back(std::move(t));
  }
  comb.terms = std::move(merged);
}

/// Plain packing step: moves mass exactly t from terms where `packable` holds
/// onto the same solutions with one more copy of `edge`, consuming terms in
/// index order and splitting at most one. Fails if the packable mass is
/// short of t, which signals a violated precondition upstream.
inline void packing_step(AlphaConvexCombination& comb, int edge, const Rational& t,
                         const std::function<bool(const CombTerm&)>& packable) {
  if (t < 0) throw ValidationError("packing_step: negative target");
  if (t == 0) return;
  Rational remaining = t;
  for (std::size_t i = 0; i < comb.terms.size() && remaining > 0; ++i) {
    if (!packable(comb.terms[i])) continue;
    if (comb.terms[i].lambda > remaining) {
      split_term(comb, static_cast<int>(i), remaining);
    }
    comb.terms[i].solution(edge) += 1;
    remaining -= comb.terms[i].lambda;
  }
  if (!(remaining == 0))
    throw ValidationError("packing_step: packable mass short by " +
                          format_rational(remaining));
  comb.value(edge) += t;
}

/// Degree profile of a fractional vector: (Ax)_v with ceiling and fractional
/// part per vertex. Fields always agree with a recomputation from x.
struct PackingContext {
  RatVector x;
  RatVector degree;            // (Ax)_v
  std::vector<Int> ceil_degree;
  RatVector frac_degree;       // <(Ax)_v>
};

inline PackingContext packing_context(const Hypergraph& h, const RatVector& x) {
  PackingContext ctx;
  ctx.x = x;
  ctx.degree = degree_vector(h, x);
  ctx.ceil_degree.resize(h.num_vertices());
  ctx.frac_degree = RatVector(h.num_vertices());
  for (int v = 0; v < h.num_vertices(); ++v) {
    ctx.ceil_degree[static_cast<std::size_t>(v)] = ceil_int(ctx.degree(v));
    ctx.frac_degree(v) = frac_part(ctx.degree(v));
  }
  return ctx;
}

namespace detail {

inline Int term_degree(const Hypergraph& h, const MultVector& sol, int v) {
  Int d = 0;
  for (int e : h.incident(v)) d += sol(e);
  return d;
}

inline std::string dump_state(const AlphaConvexCombination& comb, int edge,
                              const Rational& t) {
  std::ostringstream os;
  os << "edge=" << edge << " t=" << format_rational(t)
     << " alpha=" << format_rational(comb.alpha) << " terms:";
  for (const auto& term : comb.terms) {
    os << " (" << format_rational(term.lambda) << ";";
    for (Eigen::Index e = 0; e < term.solution.size(); ++e)
      if (term.solution(e) != 0) os << " " << e << "x" << term.solution(e);
    os << ")";
  }
  return os.str();
}

}  // namespace detail

/// Checks the two induction conditions of the modified packing step against
/// the context of the current fractional vector x:
///   (i)  (Ax^i)_v <= ceil((Ax)_v) for every term i and vertex v;
///   (ii) at every v with (Ax)_v non-integral, the mass of terms whose degree
///        equals the ceiling is at most the fractional part of (Ax)_v.
/// Also re-verifies mass and value bookkeeping exactly.
inline void verify_packing_conditions(const Hypergraph& h,
                                      const AlphaConvexCombination& comb,
                                      const PackingContext& ctx) {
  if (!(comb.lambda_sum() == comb.alpha))
    throw InternalError("combination mass drifted from alpha");
  RatVector recomputed = comb.recompute_value();
  for (Eigen::Index e = 0; e < recomputed.size(); ++e)
    if (!(recomputed(e) == comb.value(e)) || !(comb.value(e) == ctx.x(e)))
      throw InternalError("combination value drifted from target vector");
  for (const auto& term : comb.terms)
    if (!(term.lambda > 0)) throw InternalError("zero-mass term present");
  for (int v = 0; v < h.num_vertices(); ++v) {
    const Int ceil_v = ctx.ceil_degree[static_cast<std::size_t>(v)];
    Rational mass_at_ceiling = 0;
    for (const auto& term : comb.terms) {
      Int deg = detail::term_degree(h, term.solution, v);
      if (deg > ceil_v)
        throw InternalError("condition (i) violated at vertex " + std::to_string(v));
      if (deg == ceil_v) mass_at_ceiling += term.lambda;
    }
    if (!(ctx.frac_degree(v) == 0) && mass_at_ceiling > ctx.frac_degree(v))
      throw InternalError("condition (ii) violated at vertex " + std::to_string(v));
  }
}

/// Packing step that preserves conditions (i)/(ii). Blocked sets Q_v are
/// built per vertex of the packed edge:
///   case I   ((Ax')_v = 0):                        nothing blocked;
///   case II  (ceilings equal, nonzero):            terms at the ceiling;
///   case III (ceiling rises, both degrees
///             non-integral):                       a prefix of the terms at
///             the old ceiling with mass exactly 1-t (one split), or all of
///             them when their mass is below 1-t; with either degree
///             integral nothing is blocked.
/// Mass t is then packed into unblocked terms in index order. Running out of
/// unblocked mass is impossible when the caller's preconditions hold and is
/// reported as an internal invariant violation.
inline void modified_packing_step(const Hypergraph& h, AlphaConvexCombination& comb,
                                  int edge, const Rational& t,
                                  const PackingContext& before,
                                  const PackingContext& after) {
  if (t == 0) return;
  if (!(t > 0) || t > 1)
    throw ValidationError("modified_packing_step: target must lie in (0, 1]");
  std::vector<char> blocked(comb.terms.size(), 0);

  for (int v : h.edge(edge)) {
    const Rational deg_before = before.degree(v);
    if (deg_before == 0) continue;  // case I
    const Int ceil_before = before.ceil_degree[static_cast<std::size_t>(v)];
    const Int ceil_after = after.ceil_degree[static_cast<std::size_t>(v)];
    if (ceil_after == ceil_before) {
      // Case II: protect the terms already at the ceiling.
      for (std::size_t i = 0; i < comb.terms.size(); ++i)
        if (detail::term_degree(h, comb.terms[i].solution, v) == ceil_after)
          blocked[i] = 1;
      continue;
    }
    // Case III: ceiling rises by one.
    if (ceil_after != ceil_before + 1)
      throw InternalError("packing ceilings differ by more than one; target above 1?");
    if (is_integral(after.degree(v)) || is_integral(deg_before)) continue;
    Rational quota = Rational(1) - t;
    for (std::size_t i = 0; i < comb.terms.size() && quota > 0; ++i) {
      if (!(detail::term_degree(h, comb.terms[i].solution, v) == ceil_before)) continue;
      if (comb.terms[i].lambda <= quota) {
        quota -= comb.terms[i].lambda;
        blocked[i] = 1;
      } else {
        // Split so the blocked prefix hits the quota exactly; the tail keeps
        // whatever block mark it already carries.
        split_term(comb, static_cast<int>(i), quota);
        blocked.insert(blocked.begin() + static_cast<long>(i) + 1, blocked[i]);
        blocked[i] = 1;
        quota = 0;
      }
    }
  }

  Rational remaining = t;
  for (std::size_t i = 0; i < comb.terms.size() && remaining > 0; ++i) {
    if (blocked[i]) continue;
    if (comb.terms[i].lambda > remaining) {
      split_term(comb, static_cast<int>(i), remaining);
      blocked.insert(blocked.begin() + static_cast<long>(i) + 1, 0);
    }
    comb.terms[i].solution(edge) += 1;
    remaining -= comb.terms[i].lambda;
  }
  if (!(remaining == 0))
    throw InternalError("modified packing step ran out of unblocked mass; " +
                        detail::dump_state(comb, edge, t));
  comb.value(edge) += t;
}

/// Optional instrumentation for the packing pipeline.
struct PackingAudit {
  long packing_steps = 0;
  long conditions_verified = 0;
};

/// Core decomposition: writes x (strictly fractional on `support`, zero
/// elsewhere, support incidence columns independent) as a rho-convex
/// combination of 0-1 solutions satisfying conditions (i)/(ii).
///
/// The recursion is unrolled: edges leave the support in discovered order
/// (minimum nonzero-degree vertex, then its incident edge of maximum value)
/// and are packed back in reverse. Conditions are re-verified after every
/// step; k and rho/mu come from the ambient hypergraph.
inline AlphaConvexCombination hbm_core(const Hypergraph& h, std::vector<int> support,
                                       const RatVector& x, bool bipartite,
                                       PackingAudit* audit = nullptr) {
  std::sort(support.begin(), support.end());
  std::vector<char> in_support(h.num_edges(), 0);
  for (int e : support) {
    if (!(x(e) > 0) || !(x(e) < 1))
      throw InternalError("hbm_core: support value not strictly between 0 and 1");
    in_support[e] = 1;
  }
  for (int e = 0; e < h.num_edges(); ++e)
    if (!in_support[e] && !(x(e) == 0))
      throw InternalError("hbm_core: nonzero value outside support");
  if (!support.empty() &&
      exact_rank(incidence_matrix(h, support)) != static_cast<int>(support.size()))
    throw InternalError("hbm_core: support incidence columns are dependent");

  const int k = std::max(1, h.k());  // edgeless hypergraphs decompose trivially
  const Rational alpha = rho(k, bipartite);
  const int degree_bound = mu(k, bipartite);

  std::vector<int> removal_order;
  std::vector<int> live = support;
  while (!live.empty()) {
    int vhat = *min_nonzero_degree_vertex(h, live);
    if (support_degree(h, live, vhat) > degree_bound)
      throw InternalError("minimum nonzero degree exceeds mu; dependent columns or a bad witness");
    int chosen = -1;
    for (int e : live)
      if (h.edge_contains(e, vhat) && (chosen < 0 || x(e) > x(chosen))) chosen = e;
    removal_order.push_back(chosen);
    live.erase(std::find(live.begin(), live.end(), chosen));
  }

  AlphaConvexCombination comb = trivial_combination(alpha, h.num_edges());
  RatVector running = RatVector::Zero(h.num_edges());
  PackingContext ctx = packing_context(h, running);
  for (auto it = removal_order.rbegin(); it != removal_order.rend(); ++it) {
    const int e = *it;
    PackingContext before = ctx;
    running(e) = x(e);
    ctx = packing_context(h, running);
    modified_packing_step(h, comb, e, x(e), before, ctx);
    verify_packing_conditions(h, comb, ctx);
    if (audit) {
      ++audit->packing_steps;
      ++audit->conditions_verified;
    }
  }
  return comb;
}

/// Full pipeline for one b-matching instance: exact LP vertex, integer-part
/// fixing, hbm_core on the fractional residual, then the integer part is
/// attached to a prefix of terms of mass exactly one so that the combination
/// still recomposes to x* exactly.
struct Decomposition {
  LpResult lp;
  AlphaConvexCombination combination;
  bool bipartite = false;
};

inline Decomposition decompose(const BMatchInstance& inst, PackingAudit* audit = nullptr) {
  if (!inst.validated) throw ValidationError("decompose: instance not validated");
  Decomposition out;
  out.lp = solve_to_vertex(build_bmatch_lp(inst));
  SupportSplit split = fractional_support_split(inst.h, out.lp);

  // The bipartite ratio needs k >= 2; singleton-only instances have an
  // integral LP anyway, so the general rho = 1 is already exact there.
  out.bipartite = inst.bipartite_witness.has_value() && inst.h.k() >= 2;
  if (out.bipartite &&
      !check_bipartite_witness(inst.h, inst.bipartite_witness->distinguished_set))
    throw ValidationError("decompose: bipartite witness failed re-verification");

  out.combination =
      hbm_core(inst.h, split.support, split.fractional_part.values, out.bipartite, audit);

  const MultVector& z = split.integer_part.multiplicities;
  if (z.any()) {
    auto& comb = out.combination;
    Rational quota = 1;
    for (std::size_t i = 0; i < comb.terms.size() && quota > 0; ++i) {
      if (comb.terms[i].lambda > quota) split_term(comb, static_cast<int>(i), quota);
      comb.terms[i].solution += z;
      quota -= comb.terms[i].lambda;
    }
    if (!(quota == 0)) throw InternalError("decompose: alpha < 1 while attaching integer part");
    for (Eigen::Index e = 0; e < z.size(); ++e)
      if (z(e) != 0) comb.value(e) += Rational(z(e));
  }

  if (!(out.combination.value == out.lp.solution.values))
    throw InternalError("decompose: combination does not recompose to the LP vertex");
  for (const auto& term : out.combination.terms)
    if (!is_feasible(inst, IntegralSolution{term.solution}))
      throw InternalError("decompose: infeasible term in final combination");
  return out;
}

/// Maximum-weight term (ties: lowest index).
inline std::pair<IntegralSolution, Rational> best_term(const AlphaConvexCombination& comb,
                                                       const RatVector& w) {
  if (comb.terms.empty()) throw ValidationError("best_term: empty combination");
  int best = 0;
  Rational best_value = solution_weight(w, comb.terms[0].solution);
  for (std::size_t i = 1; i < comb.terms.size(); ++i) {
    Rational value = solution_weight(w, comb.terms[i].solution);
    if (value > best_value) {
      best = static_cast<int>(i);
      best_value = value;
    }
  }
  return {IntegralSolution{comb.terms[best].solution}, best_value};
}

/// sum_i (lambda_i / alpha) * w(x^i), exactly.
inline Rational expected_value(const AlphaConvexCombination& comb, const RatVector& w) {
  if (comb.terms.empty()) throw ValidationError("expected_value: empty combination");
  Rational total = 0;
  for (const auto& term : comb.terms) total += term.lambda * solution_weight(w, term.solution);
  return total / comb.alpha;
}

/// Draws term i with probability exactly lambda_i / alpha, seeded.
inline IntegralSolution sample_term(const AlphaConvexCombination& comb, std::uint64_t seed) {
  if (comb.terms.empty()) throw ValidationError("sample_term: empty combination");
  Int scale = 1;
  for (const auto& term : comb.terms) scale = lcm(scale, denominator(term.lambda));
  std::vector<Int> weights;
  Int total = 0;
  for (const auto& term : comb.terms) {
    Rational scaled = term.lambda * Rational(scale);
    weights.push_back(numerator(scaled));
    total += weights.back();
  }
  std::mt19937_64 rng(seed);
  Int draw = uniform_int_below(total, rng);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (draw < weights[i]) return IntegralSolution{comb.terms[i].solution};
    draw -= weights[i];
  }
  throw InternalError("sample_term: prefix sums did not cover the draw");
}

/// Caratheodory pruning: identical solutions merge, then affine dependencies
/// among the term vectors shift mass until terms vanish, stopping at
/// |E| + 1 terms. Applied to final outputs only — mid-recursion reweighting
/// could break condition (ii).
inline AlphaConvexCombination caratheodory_prune(AlphaConvexCombination comb) {
  merge_identical_terms(comb);
  const Eigen::Index dims = comb.value.size();
  while (static_cast<Eigen::Index>(comb.terms.size()) > dims + 1) {
    RatMatrix m(dims + 1, static_cast<Eigen::Index>(comb.terms.size()));
    for (std::size_t i = 0; i < comb.terms.size(); ++i) {
      for (Eigen::Index e = 0; e < dims; ++e)
        m(e, static_cast<Eigen::Index>(i)) = Rational(comb.terms[i].solution(e));
      m(dims, static_cast<Eigen::Index>(i)) = 1;
    }
    auto gamma = kernel_vector(m);
    if (!gamma) throw InternalError("caratheodory_prune: expected a dependency");
    // gamma sums to zero, so it has positive entries; step until a term dies.
    std::optional<Rational> step;
    for (std::size_t i = 0; i < comb.terms.size(); ++i) {
      if (!((*gamma)(static_cast<Eigen::Index>(i)) > 0)) continue;
      Rational limit = comb.terms[i].lambda / (*gamma)(static_cast<Eigen::Index>(i));
      if (!step || limit < *step) step = limit;
    }
    if (!step) throw InternalError("caratheodory_prune: dependency without positive part");
    std::vector<CombTerm> kept;
    for (std::size_t i = 0; i < comb.terms.size(); ++i) {
      Rational lambda = comb.terms[i].lambda - *step * (*gamma)(static_cast<Eigen::Index>(i));
      if (lambda < 0) throw InternalError("caratheodory_prune: negative mass");
      if (lambda > 0) kept.push_back({lambda, comb.terms[i].solution});
    }
    comb.terms = std::move(kept);
  }
  return comb;
}

}  // namespace hypermatch
