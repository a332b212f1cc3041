#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spine/error.hpp"
#include "spine/graph.hpp"

namespace spine {

/// Version tag of the edge ranking rule, recorded in every provenance.
inline constexpr const char* kTiebreakVersion = "score-asc,weight-desc,u-asc,v-asc/v1";

enum class FilterKind { global_threshold, disparity };

inline const char* to_string(FilterKind k) {
  return k == FilterKind::global_threshold ? "global_threshold" : "disparity";
}

/// Retained-edge target: fraction * edge_count rounded half to even.
inline std::size_t edge_budget(std::size_t edge_count, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw ValidationError("fraction must lie in [0, 1]");
  const double x = fraction * static_cast<double>(edge_count);
  const double lower = std::floor(x);
  const double rem = x - lower;
  // products such as 0.3 * 1255 land within an ulp of .5; treat them as exact halves
  if (std::abs(rem - 0.5) <= 1e-12 * std::max(1.0, x)) {
    const auto l = static_cast<std::size_t>(lower);
    return l % 2 == 0 ? l : l + 1;
  }
  return static_cast<std::size_t>(std::llround(x));
}

struct EdgeScore {
  EdgeId edge = 0;
  double score = 0.0;  // lower is retained first
};

/// Orders edges by (score asc, weight desc, u asc, v asc). Edge ids follow
/// (u, v) order, so the id is the final key.
inline std::vector<EdgeId> rank_edges(const Graph& g, std::span<const EdgeScore> scores) {
  std::vector<EdgeScore> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(), [&](const EdgeScore& a, const EdgeScore& b) {
    if (a.score != b.score) return a.score < b.score;
    const double wa = g.edge(a.edge).weight, wb = g.edge(b.edge).weight;
    if (wa != wb) return wa > wb;
    return a.edge < b.edge;
  });
  std::vector<EdgeId> out;
  out.reserve(sorted.size());
  for (const auto& s : sorted) out.push_back(s.edge);
  return out;
}

/// Probability under the uniform-split null model that a node of degree k
/// gives one of its edges a share >= w/s: (1 - w/s)^(k-1). Degree-1 sides score 1.
inline double disparity_side_score(double weight, double strength, std::size_t degree) {
  if (degree <= 1) return 1.0;
  const double p = weight / strength;
  return std::pow(1.0 - p, static_cast<double>(degree - 1));
}

/// One score per edge: the smaller of the two endpoint side scores.
inline std::vector<EdgeScore> disparity_scores(const Graph& g) {
  std::vector<EdgeScore> out;
  out.reserve(g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    const double a = disparity_side_score(e.weight, g.strength(e.u), g.degree(e.u));
    const double b = disparity_side_score(e.weight, g.strength(e.v), g.degree(e.v));
    out.push_back({id, std::min(a, b)});
  }
  return out;
}

struct Fraction {
  double value;
};
struct Alpha {
  double value;
};
using Selection = std::variant<Fraction, Alpha>;

inline std::vector<EdgeId> select_global_threshold(const Graph& g, double fraction) {
  const std::size_t budget = edge_budget(g.edge_count(), fraction);
  std::vector<EdgeScore> scores;
  scores.reserve(g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) scores.push_back({id, 0.0});
  auto ranked = rank_edges(g, scores);
  ranked.resize(budget);
  std::sort(ranked.begin(), ranked.end());
  return ranked;
}

inline std::vector<EdgeId> select_disparity(const Graph& g, const Selection& how) {
  const auto scores = disparity_scores(g);
  std::vector<EdgeId> kept;
  if (const auto* f = std::get_if<Fraction>(&how)) {
    kept = rank_edges(g, scores);
    kept.resize(edge_budget(g.edge_count(), f->value));
  } else {
    const double alpha = std::get<Alpha>(how).value;
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
    for (const auto& s : scores)
      if (s.score < alpha) kept.push_back(s.edge);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

struct ComponentBudget {
  std::string kind;  // "local" or "global"
  std::size_t index = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t budget = 0;

  friend bool operator==(const ComponentBudget&, const ComponentBudget&) = default;
};

struct Provenance {
  std::string method;             // filter kind
  std::string mode = "classical";  // or "multilevel"
  std::optional<double> fraction;
  std::optional<double> alpha;
  std::optional<std::uint64_t> partition_seed;
  std::string seed_policy;  // "fixed", "auto(k)" or empty when no partition is used
  std::string parent;
  std::size_t parent_nodes = 0;
  std::size_t parent_edges = 0;
  std::optional<std::size_t> classical_budget;  // edge_budget(E, fraction) of the whole graph
  std::vector<ComponentBudget> components;
  std::string tiebreak = kTiebreakVersion;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Retained subgraph (isolated nodes pruned) plus how it was produced.
struct Backbone {
  Graph graph;
  std::vector<EdgeId> parent_edges;  // ascending ids into the parent graph
  Provenance provenance;
};

namespace detail {
inline Backbone make_backbone(const Graph& g, std::vector<EdgeId> kept, Provenance prov) {
  Subgraph sub = edge_subgraph(g, kept);
  prov.parent = g.name();
  prov.parent_nodes = g.node_count();
  prov.parent_edges = g.edge_count();
  return {std::move(sub.graph), std::move(sub.parent_edges), std::move(prov)};
}
}  // namespace detail

/// Keeps the edge_budget(E, fraction) heaviest edges.
inline Backbone global_threshold(const Graph& g, double fraction) {
  Provenance prov;
  prov.method = to_string(FilterKind::global_threshold);
  prov.fraction = fraction;
  prov.classical_budget = edge_budget(g.edge_count(), fraction);
  return detail::make_backbone(g, select_global_threshold(g, fraction), std::move(prov));
}

/// Fraction mode keeps the budget's lowest-scored edges; alpha mode keeps
/// every edge scoring below alpha.
inline Backbone disparity_filter(const Graph& g, const Selection& how) {
  Provenance prov;
  prov.method = to_string(FilterKind::disparity);
  if (const auto* f = std::get_if<Fraction>(&how)) {
    prov.fraction = f->value;
    prov.classical_budget = edge_budget(g.edge_count(), f->value);
  } else {
    prov.alpha = std::get<Alpha>(how).value;
  }
  return detail::make_backbone(g, select_disparity(g, how), std::move(prov));
}

}  // namespace spine
