#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypermatch/dense.hpp"
#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

/// Sentinel for an unbounded edge capacity; validate() replaces it with the
/// tightest vacuous finite bound.
inline constexpr std::int64_t kUnboundedCapacity = -1;

/// Optional structural knowledge that the hypergraph is bipartite: a vertex
/// set met exactly once by every edge. Supplied with the instance, never
/// inferred.
struct BipartiteWitness {
  std::vector<int> distinguished_set;  // sorted vertex ids

  friend bool operator==(const BipartiteWitness&, const BipartiteWitness&) = default;
};

struct BMatchInstance {
  Hypergraph h;
  std::vector<std::int64_t> b;  // per-vertex limits, >= 0
  std::vector<std::int64_t> c;  // per-edge capacities; kUnboundedCapacity until validated
  RatVector w;                  // per-edge weights, >= 0
  std::optional<BipartiteWitness> bipartite_witness;
  bool validated = false;
};

struct DemandInstance {
  Hypergraph h;
  std::vector<std::int64_t> b;  // per-vertex limits, >= 0
  std::vector<std::int64_t> d;  // per-edge demands, > 0
  RatVector w;                  // per-edge weights, >= 0
  bool validated = false;
};

/// Exact rational vector indexed by edges, 0 <= x_e <= c_e.
struct FractionalSolution {
  RatVector values;
};

/// Per-edge selection multiplicities.
struct IntegralSolution {
  MultVector multiplicities;
};

namespace detail {

inline void check_common(const Hypergraph& h, const std::vector<std::int64_t>& b,
                         const RatVector& w) {
  if (static_cast<int>(b.size()) != h.num_vertices())
    throw ValidationError("b has " + std::to_string(b.size()) + " entries for " +
                          std::to_string(h.num_vertices()) + " vertices");
  if (static_cast<int>(w.size()) != h.num_edges())
    throw ValidationError("w has " + std::to_string(w.size()) + " entries for " +
                          std::to_string(h.num_edges()) + " edges");
  for (std::size_t v = 0; v < b.size(); ++v)
    if (b[v] < 0) throw ValidationError("negative limit b at vertex " + std::to_string(v));
  for (Eigen::Index e = 0; e < w.size(); ++e)
    if (w(e) < 0) throw ValidationError("negative weight at edge " + std::to_string(e));
}

}  // namespace detail

/// Checks every invariant and normalizes capacities: c_e is clamped to
/// min_{v in e} floor(b_v / d_e) (d == 1 here), which no feasible solution
/// can exceed, so the clamp is lossless. Idempotent.
inline BMatchInstance validate(BMatchInstance inst) {
  detail::check_common(inst.h, inst.b, inst.w);
  if (static_cast<int>(inst.c.size()) != inst.h.num_edges())
    throw ValidationError("c has " + std::to_string(inst.c.size()) + " entries for " +
                          std::to_string(inst.h.num_edges()) + " edges");
  for (int e = 0; e < inst.h.num_edges(); ++e) {
    if (inst.c[e] < 0 && inst.c[e] != kUnboundedCapacity)
      throw ValidationError("negative capacity at edge " + std::to_string(e));
    std::int64_t vacuous = inst.b[inst.h.edge(e).front()];
    for (int v : inst.h.edge(e)) vacuous = std::min(vacuous, inst.b[v]);
    inst.c[e] = (inst.c[e] == kUnboundedCapacity) ? vacuous : std::min(inst.c[e], vacuous);
  }
  if (inst.bipartite_witness) {
    auto& u = inst.bipartite_witness->distinguished_set;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (int v : u)
      if (v < 0 || v >= inst.h.num_vertices())
        throw ValidationError("bipartite witness references vertex " + std::to_string(v));
    if (!check_bipartite_witness(inst.h, u))
      throw ValidationError("bipartite witness is not met exactly once by every edge");
  }
  inst.validated = true;
  return inst;
}

/// Demand instances carry unit edge capacities; validation enforces the
/// no-clipping assumption d_e <= b_v for every v in e.
inline DemandInstance validate(DemandInstance inst) {
  detail::check_common(inst.h, inst.b, inst.w);
  if (static_cast<int>(inst.d.size()) != inst.h.num_edges())
    throw ValidationError("d has " + std::to_string(inst.d.size()) + " entries for " +
                          std::to_string(inst.h.num_edges()) + " edges");
  for (int e = 0; e < inst.h.num_edges(); ++e) {
    if (inst.d[e] <= 0)
      throw ValidationError("demand at edge " + std::to_string(e) + " must be positive");
    for (int v : inst.h.edge(e))
      if (inst.d[e] > inst.b[v])
        throw ValidationError("no-clipping violated: edge " + std::to_string(e) +
                              " has demand " + std::to_string(inst.d[e]) + " > b_" +
                              std::to_string(v) + " = " + std::to_string(inst.b[v]));
  }
  inst.validated = true;
  return inst;
}

inline RatVector degree_vector(const Hypergraph& h, const RatVector& x) {
  RatVector deg = RatVector::Zero(h.num_vertices());
  for (int e = 0; e < h.num_edges(); ++e)
    if (!(x(e) == 0))
      for (int v : h.edge(e)) deg(v) += x(e);
  return deg;
}

inline MultVector degree_vector(const Hypergraph& h, const MultVector& x) {
  MultVector deg = MultVector::Zero(h.num_vertices());
  for (int e = 0; e < h.num_edges(); ++e)
    if (x(e) != 0)
      for (int v : h.edge(e)) deg(v) += x(e);
  return deg;
}

inline bool is_feasible(const BMatchInstance& inst, const IntegralSolution& sol) {
  const auto& m = sol.multiplicities;
  if (m.size() != inst.h.num_edges()) return false;
  for (int e = 0; e < inst.h.num_edges(); ++e)
    if (m(e) < 0 || m(e) > inst.c[e]) return false;
  MultVector deg = degree_vector(inst.h, m);
  for (int v = 0; v < inst.h.num_vertices(); ++v)
    if (deg(v) > inst.b[v]) return false;
  return true;
}

inline bool is_feasible(const DemandInstance& inst, const IntegralSolution& sol) {
  const auto& m = sol.multiplicities;
  if (m.size() != inst.h.num_edges()) return false;
  std::vector<std::int64_t> load(inst.h.num_vertices(), 0);
  for (int e = 0; e < inst.h.num_edges(); ++e) {
    if (m(e) < 0 || m(e) > 1) return false;
    if (m(e) == 1)
      for (int v : inst.h.edge(e)) load[v] += inst.d[e];
  }
  for (int v = 0; v < inst.h.num_vertices(); ++v)
    if (load[v] > inst.b[v]) return false;
  return true;
}

/// Degree- and bound-feasibility of a fractional vector for a b-matching
/// instance, checked with exact comparisons.
inline bool is_feasible(const BMatchInstance& inst, const FractionalSolution& sol) {
  if (sol.values.size() != inst.h.num_edges()) return false;
  for (int e = 0; e < inst.h.num_edges(); ++e)
    if (sol.values(e) < 0 || sol.values(e) > Rational(inst.c[e])) return false;
  RatVector deg = degree_vector(inst.h, sol.values);
  for (int v = 0; v < inst.h.num_vertices(); ++v)
    if (deg(v) > Rational(inst.b[v])) return false;
  return true;
}

inline Rational solution_weight(const RatVector& w, const MultVector& m) {
  Rational total = 0;
  for (Eigen::Index e = 0; e < m.size(); ++e)
    if (m(e) != 0) total += w(e) * Rational(m(e));
  return total;
}

}  // namespace hypermatch
