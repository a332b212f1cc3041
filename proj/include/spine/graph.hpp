#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spine/error.hpp"

namespace spine {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected weighted edge, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  double weight;
  EdgeId edge;
};

/// Counters reported while canonicalizing raw edges.
struct CanonicalizeStats {
  std::size_t self_loops_dropped = 0;
  std::size_t parallel_merged = 0;
};

/**
 * Undirected weighted simple graph.
 *
 * Nodes are dense ids 0..V-1, each with a unique string label. Edges are kept
 * sorted by (u, v) with u < v, so an EdgeId is also the rank of the edge in
 * that order. The topology is immutable once built; CSR adjacency is derived
 * at construction.
 */
class Graph {
 public:
  Graph() = default;

  /// Canonicalizes `raw`: drops self-loops, orients u < v, merges parallel
  /// edges by summing weights. Throws ValidationError on a bad endpoint, a
  /// non-finite or non-positive weight, or a duplicated label.
  static Graph from_edges(std::vector<std::string> labels, std::vector<Edge> raw,
                          CanonicalizeStats* stats = nullptr) {
    for (const Edge& e : raw) {
      if (e.u >= labels.size() || e.v >= labels.size())
        throw ValidationError("edge endpoint out of range");
      if (!std::isfinite(e.weight) || e.weight <= 0.0)
        throw ValidationError("edge weight must be finite and > 0");
    }
    CanonicalizeStats local;
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (Edge e : raw) {
      if (e.u == e.v) {
        ++local.self_loops_dropped;
        continue;
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      edges.push_back(e);
    }
    // stable so that merged weights are summed in input order
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::vector<Edge> merged;
    merged.reserve(edges.size());
    for (const Edge& e : edges) {
      if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
        merged.back().weight += e.weight;
        ++local.parallel_merged;
      } else {
        merged.push_back(e);
      }
    }
    if (stats) *stats = local;
    return Graph(std::move(labels), std::move(merged));
  }

  /// Graph with labels "0".."n-1"; convenient for tests and generators.
  static Graph from_unlabeled(std::size_t node_count, std::vector<Edge> raw,
                              CanonicalizeStats* stats = nullptr) {
    std::vector<std::string> labels(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels[i] = std::to_string(i);
    return from_edges(std::move(labels), std::move(raw), stats);
  }

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Neighbor> neighbors(NodeId n) const {
    return {adjacency_.data() + offsets_[n], adjacency_.data() + offsets_[n + 1]};
  }
  std::size_t degree(NodeId n) const { return offsets_[n + 1] - offsets_[n]; }
  double strength(NodeId n) const { return strength_[n]; }
  double total_weight() const noexcept { return total_weight_; }

  const std::string& label(NodeId n) const { return labels_[n]; }
  std::span<const std::string> labels() const noexcept { return labels_; }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{a, b, 0.0},
                               [](const Edge& x, const Edge& y) {
                                 return x.u != y.u ? x.u < y.u : x.v < y.v;
                               });
    if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
  }

  /// Free-form identifier used in diagnostics (usually the source path).
  const std::string& name() const noexcept { return name_; }
  Graph named(std::string name) const& {
    Graph g = *this;
    g.name_ = std::move(name);
    return g;
  }
  Graph named(std::string name) && {
    name_ = std::move(name);
    return std::move(*this);
  }

 private:
  Graph(std::vector<std::string> labels, std::vector<Edge> edges)
      : labels_(std::move(labels)), edges_(std::move(edges)) {
    index_.reserve(labels_.size());
    for (NodeId i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second)
        throw ValidationError("duplicate node label '" + labels_[i] + "'");
    }
    const std::size_t n = labels_.size();
    offsets_.assign(n + 1, 0);
    strength_.assign(n, 0.0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      adjacency_[cursor[e.u]++] = {e.v, e.weight, id};
      adjacency_[cursor[e.v]++] = {e.u, e.weight, id};
      strength_[e.u] += e.weight;
      strength_[e.v] += e.weight;
      total_weight_ += e.weight;
    }
  }

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
  std::string name_;
};

/// A graph carved out of a parent, with the id maps back into it.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> parent_nodes;  // local node id -> parent node id
  std::vector<EdgeId> parent_edges;  // local edge id -> parent edge id
};

/// Subgraph spanned by `edge_ids` (duplicates ignored). Its nodes are exactly
/// the endpoints of those edges, numbered in ascending parent-id order, so the
/// relative order of nodes and edges matches the parent.
inline Subgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edge_ids) {
  std::vector<EdgeId> ids(edge_ids.begin(), edge_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<NodeId> nodes;
  nodes.reserve(2 * ids.size());
  for (EdgeId id : ids) {
    nodes.push_back(g.edge(id).u);
    nodes.push_back(g.edge(id).v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto local = [&](NodeId parent) {
    return static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), parent) -
                               nodes.begin());
  };
  std::vector<std::string> labels;
  labels.reserve(nodes.size());
  for (NodeId n : nodes) labels.push_back(g.label(n));
  std::vector<Edge> edges;
  edges.reserve(ids.size());
  for (EdgeId id : ids) {
    const Edge& e = g.edge(id);
    edges.push_back({local(e.u), local(e.v), e.weight});
  }
  Subgraph sub{Graph::from_edges(std::move(labels), std::move(edges)).named(g.name()),
               std::move(nodes), std::move(ids)};
  return sub;
}

/// Drops nodes of degree 0. Labels carry the original identities.
inline Graph prune_isolated(const Graph& g) {
  std::vector<EdgeId> all(g.edge_count());
  std::iota(all.begin(), all.end(), EdgeId{0});
  return edge_subgraph(g, all).graph;
}

/// Edge identity across graphs: the unordered label pair, smaller label first.
inline std::vector<std::pair<std::string, std::string>> edge_label_pairs(const Graph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const std::string& a = g.label(e.u);
    const std::string& b = g.label(e.v);
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace spine
