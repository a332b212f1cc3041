#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spine/error.hpp"
#include "spine/graph.hpp"
#include "spine/io.hpp"
#include "spine/log.hpp"

namespace spine {

using CommunityId = std::uint32_t;

/// Node -> community assignment with dense community ids 0..C-1.
class Partition {
 public:
  Partition() = default;

  /// Renumbers arbitrary ids densely in order of first appearance by node id.
  static Partition from_assignment(std::span<const std::size_t> raw) {
    Partition p;
    p.assignment_.resize(raw.size());
    std::unordered_map<std::size_t, CommunityId> remap;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto [it, inserted] = remap.emplace(raw[i], static_cast<CommunityId>(remap.size()));
      p.assignment_[i] = it->second;
    }
    p.count_ = remap.size();
    return p;
  }

  static Partition single(std::size_t node_count) {
    std::vector<std::size_t> raw(node_count, 0);
    return from_assignment(raw);
  }

  static Partition singletons(std::size_t node_count) {
    std::vector<std::size_t> raw(node_count);
    std::iota(raw.begin(), raw.end(), std::size_t{0});
    return from_assignment(raw);
  }

  std::size_t node_count() const noexcept { return assignment_.size(); }
  std::size_t community_count() const noexcept { return count_; }
  CommunityId operator[](NodeId n) const { return assignment_[n]; }
  std::span<const CommunityId> assignment() const noexcept { return assignment_; }

  void require_covers(const Graph& g) const {
    if (assignment_.size() != g.node_count())
      throw ValidationError("partition covers " + std::to_string(assignment_.size()) +
                            " nodes, graph has " + std::to_string(g.node_count()));
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<CommunityId> assignment_;
  std::size_t count_ = 0;
};

/// Weighted Newman modularity at resolution 1.
inline double modularity(const Graph& g, const Partition& p) {
  p.require_covers(g);
  const double m = g.total_weight();
  if (m <= 0.0) throw ValidationError("modularity is undefined for a graph with zero weight");
  std::vector<double> internal(p.community_count(), 0.0), total(p.community_count(), 0.0);
  for (const Edge& e : g.edges())
    if (p[e.u] == p[e.v]) internal[p[e.u]] += e.weight;
  for (NodeId i = 0; i < g.node_count(); ++i) total[p[i]] += g.strength(i);
  double q = 0.0;
  for (std::size_t c = 0; c < p.community_count(); ++c) {
    const double frac = total[c] / (2.0 * m);
    q += internal[c] / m - frac * frac;
  }
  return q;
}

struct LouvainLevel {
  std::size_t level = 0;
  std::size_t community_count = 0;
  double modularity = 0.0;
};

struct LouvainOptions {
  /// Minimum modularity gain for a node move to count as an improvement.
  double min_gain = 1e-12;
  /// Called once per aggregation level with the modularity reached there.
  std::function<void(const LouvainLevel&)> on_level;
};

namespace detail {

// Multigraph on community super-nodes; self_weight holds collapsed internal weight.
struct LouvainGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> self_weight;
  std::vector<double> strength;
  double total = 0.0;  // m

  std::size_t size() const { return adj.size(); }

  double modularity(std::span<const std::size_t> comm, std::size_t count) const {
    std::vector<double> in(count, 0.0), tot(count, 0.0);
    for (std::size_t i = 0; i < size(); ++i) {
      tot[comm[i]] += strength[i];
      in[comm[i]] += 2.0 * self_weight[i];
      for (auto [j, w] : adj[i])
        if (comm[j] == comm[i]) in[comm[i]] += w;
    }
    double q = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
      const double f = tot[c] / (2.0 * total);
      q += in[c] / (2.0 * total) - f * f;
    }
    return q;
  }
};

inline LouvainGraph louvain_graph(const Graph& g) {
  LouvainGraph lg;
  lg.adj.resize(g.node_count());
  lg.self_weight.assign(g.node_count(), 0.0);
  lg.strength.assign(g.node_count(), 0.0);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (const Neighbor& nb : g.neighbors(i)) lg.adj[i].emplace_back(nb.node, nb.weight);
    lg.strength[i] = g.strength(i);
  }
  lg.total = g.total_weight();
  return lg;
}

// Portable Fisher-Yates; std::shuffle's sequence is implementation-defined.
template <class Rng>
void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

// One level of local moving. Returns true if any node changed community.
template <class Rng>
bool local_moving(const LouvainGraph& lg, std::vector<std::size_t>& comm, Rng& rng,
                  double min_gain) {
  const std::size_t n = lg.size();
  const double m2 = 2.0 * lg.total;
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += lg.strength[i];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle(order, rng);

  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool moved_any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i : order) {
      const std::size_t old = comm[i];
      const double k = lg.strength[i];
      for (auto [j, w] : lg.adj[i]) {
        if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
        link[comm[j]] += w;
      }
      tot[old] -= k;
      // gain of joining c (up to a positive factor): link_c - tot_c * k / 2m
      const double stay = link[old] - tot[old] * k / m2;
      std::size_t best = old;
      double best_gain = stay;
      std::sort(touched.begin(), touched.end());
      for (std::size_t c : touched) {
        if (c == old) continue;
        const double gain = link[c] - tot[c] * k / m2;
        // touched is ascending, so equal gains keep the lowest community id
        if (gain > best_gain + min_gain * m2) {
          best = c;
          best_gain = gain;
        }
      }
      tot[best] += k;
      if (best != old) {
        comm[i] = best;
        improved = true;
        moved_any = true;
      }
      for (std::size_t c : touched) link[c] = 0.0;
      link[old] = 0.0;
      touched.clear();
    }
  }
  return moved_any;
}

inline std::size_t renumber(std::vector<std::size_t>& comm) {
  std::vector<std::size_t> map(comm.size(), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  for (auto& c : comm) {
    if (map[c] == static_cast<std::size_t>(-1)) map[c] = next++;
    c = map[c];
  }
  return next;
}

inline LouvainGraph aggregate(const LouvainGraph& lg, std::span<const std::size_t> comm,
                              std::size_t count) {
  LouvainGraph out;
  out.adj.resize(count);
  out.self_weight.assign(count, 0.0);
  out.strength.assign(count, 0.0);
  out.total = lg.total;
  std::vector<std::unordered_map<std::size_t, double>> sparse(count);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const std::size_t ci = comm[i];
    out.self_weight[ci] += lg.self_weight[i];
    out.strength[ci] += lg.strength[i];
    for (auto [j, w] : lg.adj[i]) {
      const std::size_t cj = comm[j];
      if (cj == ci) {
        if (i < j) out.self_weight[ci] += w;
      } else {
        sparse[ci][cj] += w;
      }
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    out.adj[c].assign(sparse[c].begin(), sparse[c].end());
    std::sort(out.adj[c].begin(), out.adj[c].end());
  }
  return out;
}

}  // namespace detail

/// Weighted Louvain at resolution 1. `seed` drives the node-visit order; the
/// result is bit-reproducible for a fixed seed.
inline Partition louvain(const Graph& g, std::uint64_t seed, const LouvainOptions& options = {}) {
  if (g.node_count() == 0) throw ValidationError("louvain: graph has no nodes");
  if (g.edge_count() == 0) {
    log::warn("louvain: graph has no edges; returning singleton partition");
    return Partition::singletons(g.node_count());
  }
  std::mt19937_64 rng(seed);
  detail::LouvainGraph lg = detail::louvain_graph(g);
  std::vector<std::size_t> node_comm(g.node_count());
  std::iota(node_comm.begin(), node_comm.end(), std::size_t{0});

  for (std::size_t level = 0;; ++level) {
    std::vector<std::size_t> comm(lg.size());
    std::iota(comm.begin(), comm.end(), std::size_t{0});
    const bool moved = detail::local_moving(lg, comm, rng, options.min_gain);
    const std::size_t count = detail::renumber(comm);
    for (auto& c : node_comm) c = comm[c];
    if (options.on_level) options.on_level({level, count, lg.modularity(comm, count)});
    if (!moved || count == lg.size()) break;
    lg = detail::aggregate(lg, comm, count);
  }
  return Partition::from_assignment(node_comm);
}

/// Either a fixed seed or best-of-`trials` over seeds 0..trials-1.
struct SeedChoice {
  std::optional<std::uint64_t> fixed;
  std::size_t trials = 10;

  static SeedChoice automatic(std::size_t trials = 10) { return {std::nullopt, trials}; }
  static SeedChoice exactly(std::uint64_t seed) { return {seed, 1}; }
};

struct DetectedPartition {
  Partition partition;
  std::uint64_t seed = 0;
  double modularity = 0.0;
};

/// Runs Louvain per the seed choice and keeps the max-Q partition (lowest seed on ties).
inline DetectedPartition detect_communities(const Graph& g, const SeedChoice& choice = {}) {
  if (g.edge_count() == 0) {
    return {louvain(g, choice.fixed.value_or(0)), choice.fixed.value_or(0), 0.0};
  }
  if (choice.fixed) {
    Partition p = louvain(g, *choice.fixed);
    const double q = modularity(g, p);
    return {std::move(p), *choice.fixed, q};
  }
  if (choice.trials == 0) throw ValidationError("seed trials must be >= 1");
  DetectedPartition best;
  best.modularity = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < choice.trials; ++s) {
    Partition p = louvain(g, s);
    const double q = modularity(g, p);
    if (q > best.modularity) best = {std::move(p), s, q};
  }
  return best;
}

/// Guimerà-Amaral participation from unweighted degrees; 0 for isolated nodes.
inline std::vector<double> participation_coefficients(const Graph& g, const Partition& p) {
  p.require_covers(g);
  std::vector<double> out(g.node_count(), 0.0);
  std::vector<std::size_t> count(p.community_count(), 0);
  std::vector<CommunityId> touched;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::size_t k = g.degree(i);
    if (k == 0) continue;
    for (const Neighbor& nb : g.neighbors(i)) {
      if (count[p[nb.node]]++ == 0) touched.push_back(p[nb.node]);
    }
    double sum = 0.0;
    for (CommunityId c : touched) {
      const double f = static_cast<double>(count[c]) / static_cast<double>(k);
      sum += f * f;
      count[c] = 0;
    }
    touched.clear();
    out[i] = 1.0 - sum;
  }
  return out;
}

struct CommunityConnectivity {
  double inter = 0.0;  // weight on edges crossing communities
  double intra = 0.0;  // weight on edges inside communities

  friend bool operator==(const CommunityConnectivity&, const CommunityConnectivity&) = default;
};

inline CommunityConnectivity community_connectivity(const Graph& g, const Partition& p) {
  p.require_covers(g);
  CommunityConnectivity c;
  for (const Edge& e : g.edges()) (p[e.u] == p[e.v] ? c.intra : c.inter) += e.weight;
  return c;
}

/// Carries `p` (over `parent`) onto the nodes of `sub` by label.
inline Partition restrict_partition(const Graph& parent, const Partition& p, const Graph& sub) {
  p.require_covers(parent);
  std::vector<std::size_t> raw(sub.node_count());
  for (NodeId i = 0; i < sub.node_count(); ++i) {
    const auto id = parent.find(sub.label(i));
    if (!id) throw ContainmentError("node '" + sub.label(i) + "' missing from parent graph");
    raw[i] = p[*id];
  }
  return Partition::from_assignment(raw);
}

inline void write_partition_tsv(std::ostream& out, const Graph& g, const Partition& p) {
  p.require_covers(g);
  for (NodeId i = 0; i < g.node_count(); ++i) out << g.label(i) << '\t' << p[i] << '\n';
}

inline Partition read_partition_tsv(std::istream& in, const Graph& g) {
  std::vector<std::size_t> raw(g.node_count());
  std::vector<char> seen(g.node_count(), 0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tab = body.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected label<TAB>community", lineno);
    const auto id = g.find(body.substr(0, tab));
    if (!id) throw ParseError("unknown node '" + std::string(body.substr(0, tab)) + "'", lineno);
    const auto field = detail::trim(body.substr(tab + 1));
    std::size_t c = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), c);
    if (ec != std::errc() || ptr != field.data() + field.size())
      throw ParseError("invalid community id", lineno);
    raw[*id] = c;
    seen[*id] = 1;
  }
  if (std::count(seen.begin(), seen.end(), 0) > 0)
    throw ValidationError("partition file does not cover every node");
  return Partition::from_assignment(raw);
}

/// Counts of `values` in `Bins` equal-width bins over [0,1]; 1.0 lands in the last bin.
template <std::size_t Bins = 20>
std::array<std::size_t, Bins> histogram01(std::span<const double> values) {
  std::array<std::size_t, Bins> h{};
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::clamp(v, 0.0, 1.0) * Bins);
    h[std::min(b, Bins - 1)]++;
  }
  return h;
}

}  // namespace spine
