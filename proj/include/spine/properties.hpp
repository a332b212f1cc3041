#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <vector>

#include "spine/error.hpp"
#include "spine/graph.hpp"

namespace spine {

inline constexpr int kUnreachable = -1;

/// Hop distances from `source`; unreachable nodes get kUnreachable.
inline void bfs_distances(const Graph& g, NodeId source, std::vector<int>& dist) {
  dist.assign(g.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId n = queue[head];
    for (const Neighbor& nb : g.neighbors(n)) {
      if (dist[nb.node] == kUnreachable) {
        dist[nb.node] = dist[n] + 1;
        queue.push_back(nb.node);
      }
    }
  }
}

struct ComponentLabels {
  std::vector<std::size_t> component;  // per node, numbered by smallest member id
  std::size_t count = 0;
};

inline ComponentLabels connected_components(const Graph& g) {
  ComponentLabels out;
  constexpr auto unset = static_cast<std::size_t>(-1);
  out.component.assign(g.node_count(), unset);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < g.node_count(); ++start) {
    if (out.component[start] != unset) continue;
    const std::size_t id = out.count++;
    out.component[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeId n = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : g.neighbors(n)) {
        if (out.component[nb.node] == unset) {
          out.component[nb.node] = id;
          stack.push_back(nb.node);
        }
      }
    }
  }
  return out;
}

/// Whole-graph summary statistics. Path-based fields use hop counts and only
/// reachable pairs; weighted fields are total_weight and avg_weighted_degree.
struct GlobalProperties {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t component_count = 0;
  double density = 0.0;
  std::optional<int> diameter;
  std::optional<double> avg_shortest_path;
  std::optional<double> path_length_estimate;  // ln V / ln <k>
  double avg_degree = 0.0;
  double avg_weighted_degree = 0.0;
  std::size_t max_degree = 0;
  std::optional<double> assortativity;  // unset when degree variance over edges is 0
  double avg_clustering = 0.0;
  double transitivity = 0.0;
  double global_efficiency = 0.0;
  double total_weight = 0.0;

  friend bool operator==(const GlobalProperties&, const GlobalProperties&) = default;
};

/// Number of edges among the neighbours of each node.
inline std::vector<std::size_t> triangles_per_node(const Graph& g) {
  std::vector<std::size_t> tri(g.node_count(), 0);
  std::vector<char> mark(g.node_count(), 0);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (const Neighbor& nb : g.neighbors(i)) mark[nb.node] = 1;
    for (const Neighbor& a : g.neighbors(i)) {
      for (const Neighbor& b : g.neighbors(a.node)) {
        if (b.node > a.node && mark[b.node]) ++tri[i];
      }
    }
    for (const Neighbor& nb : g.neighbors(i)) mark[nb.node] = 0;
  }
  return tri;
}

/// Newman's degree assortativity over edges.
inline std::optional<double> degree_assortativity(const Graph& g) {
  if (g.edge_count() == 0) return std::nullopt;
  double prod = 0.0, mean = 0.0, sq = 0.0;
  for (const Edge& e : g.edges()) {
    const double a = static_cast<double>(g.degree(e.u));
    const double b = static_cast<double>(g.degree(e.v));
    prod += a * b;
    mean += 0.5 * (a + b);
    sq += 0.5 * (a * a + b * b);
  }
  const double m = static_cast<double>(g.edge_count());
  prod /= m;
  mean /= m;
  sq /= m;
  const double den = sq - mean * mean;
  if (std::abs(den) <= 1e-12 * std::max(1.0, sq)) return std::nullopt;
  return (prod - mean * mean) / den;
}

inline GlobalProperties global_properties(const Graph& g) {
  if (g.node_count() == 0) throw ValidationError("global_properties: graph has no nodes");
  GlobalProperties p;
  const std::size_t n = g.node_count();
  const double V = static_cast<double>(n);
  p.node_count = n;
  p.edge_count = g.edge_count();
  p.component_count = connected_components(g).count;
  p.total_weight = g.total_weight();
  p.density = n > 1 ? 2.0 * static_cast<double>(p.edge_count) / (V * (V - 1.0)) : 0.0;
  p.avg_degree = 2.0 * static_cast<double>(p.edge_count) / V;
  p.avg_weighted_degree = 2.0 * p.total_weight / V;
  for (NodeId i = 0; i < n; ++i) p.max_degree = std::max(p.max_degree, g.degree(i));
  if (n > 1 && p.avg_degree > 1.0) p.path_length_estimate = std::log(V) / std::log(p.avg_degree);
  p.assortativity = degree_assortativity(g);

  const auto tri = triangles_per_node(g);
  double closed = 0.0, triads = 0.0, local_sum = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    const double k = static_cast<double>(g.degree(i));
    if (k < 2) continue;
    const double pairs = k * (k - 1.0) / 2.0;
    closed += static_cast<double>(tri[i]);
    triads += pairs;
    local_sum += static_cast<double>(tri[i]) / pairs;
  }
  p.avg_clustering = local_sum / V;
  p.transitivity = triads > 0 ? closed / triads : 0.0;

  if (p.edge_count > 0) {
    std::vector<int> dist;
    int diameter = 0;
    double hop_sum = 0.0, inverse_sum = 0.0, pairs = 0.0;
    for (NodeId s = 0; s < n; ++s) {
      bfs_distances(g, s, dist);
      for (NodeId t = 0; t < n; ++t) {
        if (t == s || dist[t] == kUnreachable) continue;
        diameter = std::max(diameter, dist[t]);
        hop_sum += dist[t];
        inverse_sum += 1.0 / dist[t];
        pairs += 1.0;
      }
    }
    p.diameter = diameter;
    p.avg_shortest_path = hop_sum / pairs;
    p.global_efficiency = inverse_sum / (V * (V - 1.0));
  }
  return p;
}

struct Sequences {
  std::vector<std::size_t> degrees;  // ascending, length V
  std::vector<double> weights;       // ascending, length E
};

inline Sequences degree_and_weight_sequences(const Graph& g) {
  Sequences s;
  s.degrees.reserve(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) s.degrees.push_back(g.degree(i));
  s.weights.reserve(g.edge_count());
  for (const Edge& e : g.edges()) s.weights.push_back(e.weight);
  std::sort(s.degrees.begin(), s.degrees.end());
  std::sort(s.weights.begin(), s.weights.end());
  return s;
}

}  // namespace spine
