#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "spine/graph.hpp"
#include "spine/io.hpp"

namespace spine::fx {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(SPINE_DATA_DIR) / name;
}

inline Graph karate() { return load_edge_list(data_path("karate.edges")); }
inline Graph lesmis() { return load_edge_list(data_path("lesmis.edges")); }

inline Graph unit_graph(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return Graph::from_unlabeled(n, std::move(edges));
}

inline Graph triangle() { return unit_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline Graph path3() { return unit_graph(3, {{0, 1}, {1, 2}}); }
inline Graph path4() { return unit_graph(4, {{0, 1}, {1, 2}, {2, 3}}); }

inline Graph clique(std::size_t n, NodeId offset = 0, std::vector<Edge>* sink = nullptr) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i + offset, j + offset, 1.0});
  if (sink) sink->insert(sink->end(), edges.begin(), edges.end());
  return Graph::from_unlabeled(n + offset, std::move(edges));
}

/// Erdos-Renyi style graph with integer weights in [1, max_weight]; integer
/// weights create plenty of ranking ties.
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p, int max_weight = 5) {
  std::bernoulli_distribution keep(p);
  std::uniform_int_distribution<int> w(1, max_weight);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (keep(rng)) edges.push_back({i, j, double(w(rng))});
  return Graph::from_unlabeled(n, std::move(edges));
}

/// Same, with continuous weights.
inline Graph random_real_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution keep(p);
  std::uniform_real_distribution<double> w(0.1, 10.0);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (keep(rng)) edges.push_back({i, j, w(rng)});
  return Graph::from_unlabeled(n, std::move(edges));
}

inline std::vector<std::size_t> random_assignment(std::mt19937_64& rng, std::size_t n,
                                                  std::size_t communities) {
  std::uniform_int_distribution<std::size_t> c(0, communities - 1);
  std::vector<std::size_t> out(n);
  for (auto& x : out) x = c(rng);
  return out;
}

}  // namespace spine::fx
