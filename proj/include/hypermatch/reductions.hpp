#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypermatch/oracle.hpp"
#include "hypermatch/packing.hpp"

namespace hypermatch {

/// b-matching instance with a partition of the edges into color classes and
/// a per-class budget on how many edges may be selected.
struct ColoredInstance {
  BMatchInstance base;
  std::vector<int> color;            // class id per edge, in [0, budgets.size())
  std::vector<std::int64_t> budgets; // positive, one per class
  bool validated = false;
};

inline ColoredInstance validate(ColoredInstance ci) {
  ci.base = validate(std::move(ci.base));
  if (static_cast<int>(ci.color.size()) != ci.base.h.num_edges())
    throw ValidationError("color list does not cover every edge");
  for (std::size_t i = 0; i < ci.budgets.size(); ++i)
    if (ci.budgets[i] <= 0)
      throw ValidationError("class budget " + std::to_string(i) + " must be positive");
  for (std::size_t e = 0; e < ci.color.size(); ++e)
    if (ci.color[e] < 0 || ci.color[e] >= static_cast<int>(ci.budgets.size()))
      throw ValidationError("edge " + std::to_string(e) + " has an unknown color");
  ci.validated = true;
  return ci;
}

/// Explicit-list combinatorial auction: each bid names a bidder, a nonempty
/// item bundle, and a nonnegative valuation.
struct AuctionInput {
  struct Bid {
    int bidder;
    std::vector<int> items;
    Rational value;
  };
  int bidders = 0;
  int items = 0;
  std::vector<Bid> bids;
  bool validated = false;
};

inline AuctionInput validate(AuctionInput a) {
  if (a.bidders < 0 || a.items < 0) throw ValidationError("negative auction dimensions");
  for (std::size_t i = 0; i < a.bids.size(); ++i) {
    auto& bid = a.bids[i];
    if (bid.bidder < 0 || bid.bidder >= a.bidders)
      throw ValidationError("bid " + std::to_string(i) + " names an unknown bidder");
    if (bid.items.empty()) throw ValidationError("bid " + std::to_string(i) + " has no items");
    std::sort(bid.items.begin(), bid.items.end());
    for (std::size_t j = 0; j < bid.items.size(); ++j) {
      if (bid.items[j] < 0 || bid.items[j] >= a.items)
        throw ValidationError("bid " + std::to_string(i) + " names an unknown item");
      if (j > 0 && bid.items[j] == bid.items[j - 1])
        throw ValidationError("bid " + std::to_string(i) + " repeats an item");
    }
    if (bid.value < 0) throw ValidationError("bid " + std::to_string(i) + " has negative value");
  }
  a.validated = true;
  return a;
}

/// Bijection between source objects (colored edges, bids) and target
/// hyperedges. Both reductions here preserve indices, so the maps are
/// identities kept explicit for the round-trip contract.
struct EdgeMap {
  std::vector<int> source_to_target;
  std::vector<int> target_to_source;
};

struct ReducedInstance {
  BMatchInstance target;
  EdgeMap map;
};

/// Bounded-color to bipartite (k+1)-hypergraph b-matching: one new vertex per
/// color carrying the class budget as its b-value; each edge gains its color
/// vertex. The color vertices form the bipartite witness.
inline ReducedInstance bounded_color_to_bipartite(const ColoredInstance& ci) {
  if (!ci.validated) throw ValidationError("bounded_color_to_bipartite: not validated");
  const int nv = ci.base.h.num_vertices();
  const int num_classes = static_cast<int>(ci.budgets.size());
  std::vector<std::vector<int>> edges = ci.base.h.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    edges[e].push_back(nv + ci.color[e]);
  ReducedInstance out;
  out.target.h = Hypergraph::make(nv + num_classes, std::move(edges));
  out.target.b = ci.base.b;
  out.target.b.insert(out.target.b.end(), ci.budgets.begin(), ci.budgets.end());
  out.target.c = ci.base.c;
  out.target.w = ci.base.w;
  std::vector<int> witness(static_cast<std::size_t>(num_classes));
  for (int i = 0; i < num_classes; ++i) witness[static_cast<std::size_t>(i)] = nv + i;
  out.target.bipartite_witness = BipartiteWitness{std::move(witness)};
  out.target = validate(std::move(out.target));
  out.map.source_to_target.resize(ci.base.h.num_edges());
  out.map.target_to_source.resize(ci.base.h.num_edges());
  for (int e = 0; e < ci.base.h.num_edges(); ++e)
    out.map.source_to_target[e] = out.map.target_to_source[e] = e;
  return out;
}

inline bool is_feasible(const ColoredInstance& ci, const IntegralSolution& sol) {
  if (!is_feasible(ci.base, sol)) return false;
  std::vector<std::int64_t> used(ci.budgets.size(), 0);
  for (int e = 0; e < ci.base.h.num_edges(); ++e) used[ci.color[e]] += sol.multiplicities(e);
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i] > ci.budgets[i]) return false;
  return true;
}

struct BoundedColorResult {
  ReducedInstance reduction;
  Decomposition decomposition;      // of the reduced instance
  IntegralSolution best;            // mapped back to source edge indices
  Rational best_value;
  Rational lp_value;                // reduced-instance LP optimum
  Rational rho_bound;               // k of the reduction minus one
};

/// Bounded-color pipeline: reduce, decompose with the bipartite ratio, map the
/// best term back through the (identity) edge map.
inline BoundedColorResult solve_bounded_color(const ColoredInstance& ci,
                                              PackingAudit* audit = nullptr) {
  BoundedColorResult out{bounded_color_to_bipartite(ci), {}, {}, 0, 0, 0};
  out.decomposition = decompose(out.reduction.target, audit);
  auto [best, value] = best_term(out.decomposition.combination, out.reduction.target.w);
  out.best = std::move(best);
  out.best_value = value;
  out.lp_value = out.decomposition.lp.value;
  out.rho_bound = Rational(out.reduction.target.h.k() - 1);
  if (!is_feasible(ci, out.best))
    throw InternalError("bounded-color best term infeasible for the source instance");
  return out;
}

/// Auction to bipartite k-hypergraph matching: vertices are bidders then
/// items, all limits 1; a bid becomes the hyperedge {bidder} + bundle with
/// the valuation as weight; the bidder side is the witness.
inline ReducedInstance auction_to_bipartite(const AuctionInput& a) {
  if (!a.validated) throw ValidationError("auction_to_bipartite: not validated");
  std::vector<std::vector<int>> edges;
  RatVector weights(static_cast<Eigen::Index>(a.bids.size()));
  for (std::size_t i = 0; i < a.bids.size(); ++i) {
    std::vector<int> edge{a.bids[i].bidder};
    for (int item : a.bids[i].items) edge.push_back(a.bidders + item);
    edges.push_back(std::move(edge));
    weights(static_cast<Eigen::Index>(i)) = a.bids[i].value;
  }
  ReducedInstance out;
  out.target.h = Hypergraph::make(a.bidders + a.items, std::move(edges));
  out.target.b.assign(static_cast<std::size_t>(a.bidders + a.items), 1);
  out.target.c.assign(a.bids.size(), 1);
  out.target.w = std::move(weights);
  std::vector<int> witness(static_cast<std::size_t>(a.bidders));
  for (int i = 0; i < a.bidders; ++i) witness[static_cast<std::size_t>(i)] = i;
  out.target.bipartite_witness = BipartiteWitness{std::move(witness)};
  out.target = validate(std::move(out.target));
  out.map.source_to_target.resize(a.bids.size());
  out.map.target_to_source.resize(a.bids.size());
  for (int i = 0; i < static_cast<int>(a.bids.size()); ++i)
    out.map.source_to_target[i] = out.map.target_to_source[i] = i;
  return out;
}

struct AllocationSample {
  std::vector<std::optional<int>> bundle_of_bidder;  // winning bid index per bidder
  Rational expected_welfare;                         // LP / rho, exact
  Rational lp_value;
  Rational best_welfare;
  Rational rho_bound;
  IntegralSolution sampled_term;
};

/// Lavi-Swamy ingredient: decomposition of the allocation LP optimum plus an
/// exact lambda/rho draw of one term, mapped back to per-bidder bundles.
/// Payments and truthfulness machinery live outside this library.
inline AllocationSample sample_allocation(const AuctionInput& a, std::uint64_t seed,
                                          PackingAudit* audit = nullptr) {
  AllocationSample out;
  out.bundle_of_bidder.assign(static_cast<std::size_t>(a.bidders), std::nullopt);
  if (a.bids.empty()) {
    out.expected_welfare = 0;
    out.lp_value = 0;
    out.best_welfare = 0;
    out.rho_bound = 1;
    out.sampled_term.multiplicities = MultVector::Zero(0);
    return out;
  }
  ReducedInstance red = auction_to_bipartite(a);
  Decomposition dec = decompose(red.target, audit);
  out.lp_value = dec.lp.value;
  out.rho_bound = rho(red.target.h.k(), dec.bipartite);
  out.expected_welfare = expected_value(dec.combination, red.target.w);
  out.best_welfare = best_term(dec.combination, red.target.w).second;
  out.sampled_term = sample_term(dec.combination, seed);
  for (int e = 0; e < red.target.h.num_edges(); ++e)
    if (out.sampled_term.multiplicities(e) == 1)
      out.bundle_of_bidder[static_cast<std::size_t>(a.bids[e].bidder)] = e;
  return out;
}

}  // namespace hypermatch
