#pragma once

#include <algorithm>
#include <vector>

#include "hypermatch/instance.hpp"

namespace hypermatch {

/// One recursion level of the local-ratio weight decomposition: the edge of
/// minimum demand, the scale w_e applied to the local weights, the live edge
/// set on entry, and the local weight vector (zero off the live set, 1 at e).
struct TraceLevel {
  int edge;
  Rational scale;
  std::vector<int> live;
  RatVector what;
};

struct WeightDecompositionTrace {
  std::vector<TraceLevel> levels;
};

/// Local weights for picking edge e: what_e = 1 and, for every other live f,
/// what_f = sum over shared vertices v of d_f / max(b_v - d_e, d_e).
/// Under no-clipping the denominator is always positive. Edges off the live
/// set (and disjoint ones) get 0.
inline RatVector what_weights(const DemandInstance& inst, const std::vector<int>& live,
                              int e) {
  if (!inst.validated) throw ValidationError("what_weights: instance not validated");
  if (std::find(live.begin(), live.end(), e) == live.end())
    throw ValidationError("what_weights: picked edge is not live");
  RatVector what = RatVector::Zero(inst.h.num_edges());
  what(e) = 1;
  for (int f : live) {
    if (f == e) continue;
    Rational sum = 0;
    for (int v : inst.h.edge(e)) {
      if (!inst.h.edge_contains(f, v)) continue;
      std::int64_t denom = std::max(inst.b[v] - inst.d[e], inst.d[e]);
      sum += Rational(inst.d[f], denom);
    }
    what(f) = sum;
  }
  return what;
}

namespace detail {

inline bool can_add_edge(const DemandInstance& inst, const MultVector& chosen, int e) {
  for (int v : inst.h.edge(e)) {
    std::int64_t load = inst.d[e];
    for (int f : inst.h.incident(v))
      if (chosen(f) != 0) load += inst.d[f];
    if (load > inst.b[v]) return false;
  }
  return true;
}

}  // namespace detail

/// Local-ratio demand matching: peel levels by minimum demand (ties to the
/// lowest edge index), scale off the local weights, keep only strictly
/// positive residual weights live, then rebuild greedily in reverse adding
/// each level's edge whenever it still fits.
inline std::pair<IntegralSolution, WeightDecompositionTrace> hdm(const DemandInstance& inst) {
  if (!inst.validated) throw ValidationError("hdm: instance not validated");
  WeightDecompositionTrace trace;
  std::vector<int> live(static_cast<std::size_t>(inst.h.num_edges()));
  for (int e = 0; e < inst.h.num_edges(); ++e) live[static_cast<std::size_t>(e)] = e;
  RatVector weight = inst.w;

  while (!live.empty()) {
    int picked = live.front();
    for (int f : live)
      if (inst.d[f] < inst.d[picked]) picked = f;
    RatVector what = what_weights(inst, live, picked);
    const Rational scale = weight(picked);
    trace.levels.push_back({picked, scale, live, what});
    std::vector<int> next_live;
    for (int f : live) {
      weight(f) -= scale * what(f);
      if (weight(f) > 0) next_live.push_back(f);
    }
    live = std::move(next_live);
  }

  IntegralSolution chosen{MultVector::Zero(inst.h.num_edges())};
  for (auto it = trace.levels.rbegin(); it != trace.levels.rend(); ++it)
    if (detail::can_add_edge(inst, chosen.multiplicities, it->edge))
      chosen.multiplicities(it->edge) = 1;
  return {std::move(chosen), std::move(trace)};
}

}  // namespace hypermatch
