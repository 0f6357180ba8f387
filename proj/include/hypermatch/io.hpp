#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypermatch/instance.hpp"
#include "hypermatch/packing.hpp"
#include "hypermatch/reductions.hpp"

namespace hypermatch {

using Json = nlohmann::ordered_json;

namespace io_detail {

inline Json parse_document(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("document is not valid JSON");
  return doc;
}

inline const Json& field(const Json& doc, const std::string& name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError("missing field '" + name + "'");
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ParseError(what + " must be an integer");
  return j.get<std::int64_t>();
}

inline Rational as_rational(const Json& j, const std::string& what) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError(what + " must be an integer or a rational string \"p/q\"");
}

inline std::vector<std::int64_t> as_int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be a list");
  std::vector<std::int64_t> out;
  for (const auto& item : j) out.push_back(as_int(item, what + " entry"));
  return out;
}

inline RatVector as_rational_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be a list");
  RatVector out(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& item : j) out(i++) = as_rational(item, what + " entry");
  return out;
}

inline Hypergraph parse_hypergraph(const Json& doc) {
  int nv = static_cast<int>(as_int(field(doc, "num_vertices"), "num_vertices"));
  const Json& ej = field(doc, "edges");
  if (!ej.is_array()) throw ParseError("edges must be a list of vertex lists");
  std::vector<std::vector<int>> edges;
  for (const auto& edge : ej) {
    if (!edge.is_array()) throw ParseError("each edge must be a vertex list");
    std::vector<int> verts;
    for (const auto& v : edge) verts.push_back(static_cast<int>(as_int(v, "vertex id")));
    edges.push_back(std::move(verts));
  }
  return Hypergraph::make(nv, std::move(edges));
}

inline std::vector<std::int64_t> parse_capacities(const Json& doc, int num_edges) {
  if (!doc.contains("c")) return std::vector<std::int64_t>(num_edges, kUnboundedCapacity);
  const Json& cj = field(doc, "c");
  if (!cj.is_array()) throw ParseError("c must be a list");
  std::vector<std::int64_t> c;
  for (const auto& item : cj) {
    if (item.is_string() && item.get<std::string>() == "inf")
      c.push_back(kUnboundedCapacity);
    else
      c.push_back(as_int(item, "capacity"));
  }
  return c;
}

}  // namespace io_detail

inline bool is_demand_document(const Json& doc) { return doc.contains("d"); }

/// Reads the instance dialect; the result is not yet validated.
inline BMatchInstance read_bmatch_instance(const Json& doc) {
  BMatchInstance inst;
  inst.h = io_detail::parse_hypergraph(doc);
  inst.b = io_detail::as_int_list(io_detail::field(doc, "b"), "b");
  inst.c = io_detail::parse_capacities(doc, inst.h.num_edges());
  inst.w = io_detail::as_rational_list(io_detail::field(doc, "w"), "w");
  if (doc.contains("bipartite_u")) {
    auto ids = io_detail::as_int_list(doc["bipartite_u"], "bipartite_u");
    BipartiteWitness witness;
    for (auto v : ids) witness.distinguished_set.push_back(static_cast<int>(v));
    inst.bipartite_witness = std::move(witness);
  }
  return inst;
}

inline DemandInstance read_demand_instance(const Json& doc) {
  DemandInstance inst;
  inst.h = io_detail::parse_hypergraph(doc);
  inst.b = io_detail::as_int_list(io_detail::field(doc, "b"), "b");
  inst.d = io_detail::as_int_list(io_detail::field(doc, "d"), "d");
  inst.w = io_detail::as_rational_list(io_detail::field(doc, "w"), "w");
  if (doc.contains("c")) {
    auto c = io_detail::parse_capacities(doc, inst.h.num_edges());
    for (auto cap : c)
      if (cap != 1)
        throw ValidationError("demand instances take unit capacities only");
  }
  return inst;
}

inline ColoredInstance read_colored_instance(const Json& doc) {
  ColoredInstance ci;
  ci.base = read_bmatch_instance(doc);
  auto colors = io_detail::as_int_list(io_detail::field(doc, "colors"), "colors");
  for (auto c : colors) ci.color.push_back(static_cast<int>(c));
  ci.budgets = io_detail::as_int_list(io_detail::field(doc, "budgets"), "budgets");
  return ci;
}

inline AuctionInput read_auction(const Json& doc) {
  AuctionInput a;
  a.bidders = static_cast<int>(io_detail::as_int(io_detail::field(doc, "bidders"), "bidders"));
  a.items = static_cast<int>(io_detail::as_int(io_detail::field(doc, "items"), "items"));
  const Json& bids = io_detail::field(doc, "bids");
  if (!bids.is_array()) throw ParseError("bids must be a list of (bidder, items, value)");
  for (const auto& bid : bids) {
    if (!bid.is_array() || bid.size() != 3)
      throw ParseError("each bid must be a (bidder, items, value) triple");
    AuctionInput::Bid parsed;
    parsed.bidder = static_cast<int>(io_detail::as_int(bid[0], "bidder id"));
    if (!bid[1].is_array()) throw ParseError("bid items must be a list");
    for (const auto& item : bid[1])
      parsed.items.push_back(static_cast<int>(io_detail::as_int(item, "item id")));
    parsed.value = io_detail::as_rational(bid[2], "bid value");
    a.bids.push_back(std::move(parsed));
  }
  return a;
}

inline Json write_instance(const BMatchInstance& inst) {
  Json doc;
  doc["num_vertices"] = inst.h.num_vertices();
  doc["edges"] = inst.h.edges();
  doc["b"] = inst.b;
  doc["c"] = inst.c;
  Json weights = Json::array();
  for (Eigen::Index e = 0; e < inst.w.size(); ++e)
    weights.push_back(format_rational(inst.w(e)));
  doc["w"] = weights;
  if (inst.bipartite_witness) doc["bipartite_u"] = inst.bipartite_witness->distinguished_set;
  return doc;
}

inline Json write_decomposition(const AlphaConvexCombination& comb, const LpResult& lp) {
  Json doc;
  doc["alpha"] = format_rational(comb.alpha);
  doc["lp_value"] = format_rational(lp.value);
  Json x_star = Json::array();
  for (Eigen::Index e = 0; e < lp.solution.values.size(); ++e)
    x_star.push_back(format_rational(lp.solution.values(e)));
  doc["x_star"] = x_star;
  Json terms = Json::array();
  for (const auto& term : comb.terms) {
    Json t;
    t["lambda"] = format_rational(term.lambda);
    std::vector<std::int64_t> mult(term.solution.data(),
                                   term.solution.data() + term.solution.size());
    t["multiplicities"] = mult;
    terms.push_back(std::move(t));
  }
  doc["terms"] = terms;
  return doc;
}

struct StoredDecomposition {
  Rational alpha;
  Rational lp_value;
  RatVector x_star;
  std::vector<CombTerm> terms;
};

inline StoredDecomposition read_decomposition(const Json& doc) {
  StoredDecomposition out;
  out.alpha = io_detail::as_rational(io_detail::field(doc, "alpha"), "alpha");
  out.lp_value = io_detail::as_rational(io_detail::field(doc, "lp_value"), "lp_value");
  out.x_star = io_detail::as_rational_list(io_detail::field(doc, "x_star"), "x_star");
  const Json& terms = io_detail::field(doc, "terms");
  if (!terms.is_array()) throw ParseError("terms must be a list");
  for (const auto& term : terms) {
    CombTerm parsed;
    parsed.lambda = io_detail::as_rational(io_detail::field(term, "lambda"), "lambda");
    auto mult = io_detail::as_int_list(io_detail::field(term, "multiplicities"),
                                       "multiplicities");
    parsed.solution = MultVector(static_cast<Eigen::Index>(mult.size()));
    for (std::size_t i = 0; i < mult.size(); ++i)
      parsed.solution(static_cast<Eigen::Index>(i)) = mult[i];
    out.terms.push_back(std::move(parsed));
  }
  return out;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return io_detail::parse_document(text);
}

}  // namespace hypermatch
