#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hypermatch/errors.hpp"
#include "hypermatch/rational.hpp"

namespace hypermatch {

/// Vertex/edge structure of a k-hypergraph. Edges are vertex sets (kept
/// sorted, no vertex repeats inside an edge); parallel edges are distinct
/// entries of the edge list. Immutable after construction.
class Hypergraph {
public:
  Hypergraph() = default;

  /// Validates and canonicalizes: ids in range, edges nonempty, no repeats
  /// within an edge. Throws ValidationError otherwise.
  static Hypergraph make(int num_vertices, std::vector<std::vector<int>> edges) {
    if (num_vertices < 0) throw ValidationError("negative vertex count");
    Hypergraph h;
    h.num_vertices_ = num_vertices;
    h.edges_ = std::move(edges);
    h.k_ = 0;
    for (std::size_t e = 0; e < h.edges_.size(); ++e) {
      auto& verts = h.edges_[e];
      if (verts.empty())
        throw ValidationError("edge " + std::to_string(e) + " is empty");
      std::sort(verts.begin(), verts.end());
      for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] < 0 || verts[i] >= num_vertices)
          throw ValidationError("edge " + std::to_string(e) + " references vertex " +
                                std::to_string(verts[i]) + " outside [0, " +
                                std::to_string(num_vertices) + ")");
        if (i > 0 && verts[i] == verts[i - 1])
          throw ValidationError("edge " + std::to_string(e) + " repeats vertex " +
                                std::to_string(verts[i]));
      }
      h.k_ = std::max(h.k_, static_cast<int>(verts.size()));
    }
    h.incident_.assign(num_vertices, {});
    for (std::size_t e = 0; e < h.edges_.size(); ++e)
      for (int v : h.edges_[e]) h.incident_[v].push_back(static_cast<int>(e));
    return h;
  }

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int k() const { return k_; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  const std::vector<int>& edge(int e) const { return edges_[e]; }
  /// Edge ids incident to v, ascending.
  const std::vector<int>& incident(int v) const { return incident_[v]; }

  bool edge_contains(int e, int v) const {
    const auto& verts = edges_[e];
    return std::binary_search(verts.begin(), verts.end(), v);
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
  }

private:
  int num_vertices_ = 0;
  std::vector<std::vector<int>> edges_;
  std::vector<std::vector<int>> incident_;
  int k_ = 0;
};

/// True iff every edge of h meets u exactly once (u given as a vertex set).
inline bool check_bipartite_witness(const Hypergraph& h, const std::vector<int>& u) {
  std::vector<char> in_u(h.num_vertices(), 0);
  for (int v : u) {
    if (v < 0 || v >= h.num_vertices()) return false;
    in_u[v] = 1;
  }
  for (const auto& verts : h.edges()) {
    int hits = 0;
    for (int v : verts)
      if (in_u[v]) ++hits;
    if (hits != 1) return false;
  }
  return true;
}

/// Approximation ratio: k-1+1/k in general, k-1 for bipartite hypergraphs.
inline Rational rho(int k, bool bipartite) {
  if (bipartite) {
    if (k < 2) throw ValidationError("bipartite rho requires k >= 2");
    return Rational(k - 1);
  }
  if (k < 1) throw ValidationError("rho requires k >= 1");
  return Rational(k - 1) + Rational(1, k);
}

/// Degree bound used by the packing analysis: k in general, k-1 bipartite.
inline int mu(int k, bool bipartite) {
  if (bipartite) {
    if (k < 2) throw ValidationError("bipartite mu requires k >= 2");
    return k - 1;
  }
  if (k < 1) throw ValidationError("mu requires k >= 1");
  return k;
}

/// Vertex of minimum nonzero degree in (V, support); ties broken by lowest
/// vertex id. Empty support yields nullopt.
inline std::optional<int> min_nonzero_degree_vertex(const Hypergraph& h,
                                                    const std::vector<int>& support) {
  if (support.empty()) return std::nullopt;
  std::vector<int> degree(h.num_vertices(), 0);
  for (int e : support)
    for (int v : h.edge(e)) ++degree[v];
  int best = -1;
  for (int v = 0; v < h.num_vertices(); ++v)
    if (degree[v] >= 1 && (best < 0 || degree[v] < degree[best])) best = v;
  return best;
}

/// Degree of v counting only edges in support.
inline int support_degree(const Hypergraph& h, const std::vector<int>& support, int v) {
  int d = 0;
  for (int e : support)
    if (h.edge_contains(e, v)) ++d;
  return d;
}

}  // namespace hypermatch
