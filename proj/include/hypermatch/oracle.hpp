#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypermatch/packing.hpp"

namespace hypermatch {

inline const Int kDefaultEnumerationBudget = Int(1) << 22;

struct BruteForceResult {
  Rational value;
  IntegralSolution solution;
};

namespace detail {

struct BMatchSearch {
  const BMatchInstance& inst;
  std::vector<std::int64_t> residual;
  MultVector current;
  Rational current_value = 0;
  BruteForceResult best;

  explicit BMatchSearch(const BMatchInstance& instance)
      : inst(instance),
        residual(instance.b),
        current(MultVector::Zero(instance.h.num_edges())) {
    best.value = 0;
    best.solution.multiplicities = current;
  }

  // Depth-first over multiplicities in lexicographic order; keeping only
  // strict improvements makes the reported optimum the lexicographically
  // smallest one.
  void run(int e) {
    if (e == inst.h.num_edges()) {
      if (current_value > best.value) {
        best.value = current_value;
        best.solution.multiplicities = current;
      }
      return;
    }
    run(e + 1);
    for (std::int64_t m = 1; m <= inst.c[e]; ++m) {
      bool fits = true;
      for (int v : inst.h.edge(e))
        if (residual[v] == 0) fits = false;
      if (!fits) break;
      for (int v : inst.h.edge(e)) --residual[v];
      current(e) = m;
      current_value += inst.w(e);
      run(e + 1);
    }
    if (current(e) != 0) {
      for (int v : inst.h.edge(e)) residual[v] += current(e);
      current_value -= inst.w(e) * Rational(current(e));
      current(e) = 0;
    }
  }
};

}  // namespace detail

/// Exact optimum by enumeration over edge multiplicities with degree pruning.
/// Refuses to run when prod(c_e + 1) exceeds the budget.
inline BruteForceResult brute_force_bmatch(const BMatchInstance& inst,
                                           const Int& budget = kDefaultEnumerationBudget) {
  if (!inst.validated) throw ValidationError("brute_force_bmatch: instance not validated");
  Int space = 1;
  for (int e = 0; e < inst.h.num_edges(); ++e) {
    space *= Int(inst.c[e] + 1);
    if (space > budget)
      throw BudgetError("b-matching enumeration space exceeds budget " + budget.str());
  }
  detail::BMatchSearch search(inst);
  search.run(0);
  return search.best;
}

/// Exact optimum over 0/1 edge subsets under the demand constraints.
inline BruteForceResult brute_force_demand(const DemandInstance& inst,
                                           const Int& budget = kDefaultEnumerationBudget) {
  if (!inst.validated) throw ValidationError("brute_force_demand: instance not validated");
  const int n = inst.h.num_edges();
  if ((Int(1) << n) > budget)
    throw BudgetError("demand enumeration space exceeds budget " + budget.str());
  BruteForceResult best;
  best.value = 0;
  best.solution.multiplicities = MultVector::Zero(n);
  std::vector<std::int64_t> load(inst.h.num_vertices(), 0);
  MultVector current = MultVector::Zero(n);
  Rational current_value = 0;

  std::function<void(int)> run = [&](int e) {
    if (e == n) {
      if (current_value > best.value) {
        best.value = current_value;
        best.solution.multiplicities = current;
      }
      return;
    }
    run(e + 1);
    bool fits = true;
    for (int v : inst.h.edge(e))
      if (load[v] + inst.d[e] > inst.b[v]) fits = false;
    if (fits) {
      for (int v : inst.h.edge(e)) load[v] += inst.d[e];
      current(e) = 1;
      current_value += inst.w(e);
      run(e + 1);
      for (int v : inst.h.edge(e)) load[v] -= inst.d[e];
      current(e) = 0;
      current_value -= inst.w(e);
    }
  };
  run(0);
  return best;
}

/// LP optimum, brute-force integral optimum, their ratio, and the ratio
/// certified by the decomposition (LP / best term), all exact.
struct GapReport {
  Rational lp_value;
  Rational ilp_value;
  std::optional<Rational> gap;                  // lp/ilp when ilp > 0
  std::optional<Rational> decomposition_ratio;  // lp/best-term when best > 0
  Rational rho_bound;
  int term_count = 0;
};

inline GapReport integrality_gap(const BMatchInstance& inst,
                                 const Int& budget = kDefaultEnumerationBudget) {
  GapReport report;
  BruteForceResult ilp = brute_force_bmatch(inst, budget);
  Decomposition dec = decompose(inst);
  auto [best, best_value] = best_term(dec.combination, inst.w);
  report.lp_value = dec.lp.value;
  report.ilp_value = ilp.value;
  if (ilp.value > 0) report.gap = dec.lp.value / ilp.value;
  if (best_value > 0) report.decomposition_ratio = dec.lp.value / best_value;
  report.rho_bound = rho(std::max(1, inst.h.k()), dec.bipartite);
  report.term_count = static_cast<int>(dec.combination.terms.size());
  if (report.decomposition_ratio && *report.decomposition_ratio > report.rho_bound)
    throw InternalError("decomposition ratio exceeds rho");
  return report;
}

}  // namespace hypermatch
