#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spine/community.hpp"
#include "spine/components.hpp"
#include "spine/error.hpp"
#include "spine/filters.hpp"
#include "spine/log.hpp"

namespace spine {

enum class ExtractionMode { classical, multilevel };

inline const char* to_string(ExtractionMode m) {
  return m == ExtractionMode::classical ? "classical" : "multilevel";
}

struct ExtractionPlan {
  FilterKind filter = FilterKind::global_threshold;
  Selection selection = Fraction{0.3};
  SeedChoice seed = SeedChoice::automatic();
  ExtractionMode mode = ExtractionMode::multilevel;

  void validate() const {
    if (const auto* f = std::get_if<Fraction>(&selection)) {
      if (!(f->value >= 0.0 && f->value <= 1.0))
        throw ValidationError("fraction must lie in [0, 1]");
    } else if (filter != FilterKind::disparity) {
      throw ValidationError("alpha selection requires the disparity filter");
    }
  }
};

inline std::string describe(const SeedChoice& s) {
  return s.fixed ? "fixed" : "auto(" + std::to_string(s.trials) + ")";
}

namespace detail {

inline std::vector<EdgeId> select(const Graph& g, const ExtractionPlan& plan) {
  if (plan.filter == FilterKind::global_threshold)
    return select_global_threshold(g, std::get<Fraction>(plan.selection).value);
  return select_disparity(g, plan.selection);
}

inline Provenance base_provenance(const Graph& g, const ExtractionPlan& plan) {
  Provenance prov;
  prov.method = to_string(plan.filter);
  prov.mode = to_string(plan.mode);
  if (const auto* f = std::get_if<Fraction>(&plan.selection)) {
    prov.fraction = f->value;
    prov.classical_budget = edge_budget(g.edge_count(), f->value);
  } else {
    prov.alpha = std::get<Alpha>(plan.selection).value;
  }
  return prov;
}

}  // namespace detail

/// Applies the plan's filter once to the whole graph.
inline Backbone classical_backbone(const Graph& g, const ExtractionPlan& plan) {
  plan.validate();
  Provenance prov = detail::base_provenance(g, plan);
  prov.mode = to_string(ExtractionMode::classical);
  return detail::make_backbone(g, detail::select(g, plan), std::move(prov));
}

/// Filters every local and global component independently with its own budget
/// and unions the results. Component edge sets are disjoint, so the union is a
/// concatenation of parent edge ids.
inline Backbone multilevel_backbone(const Graph& g, const ExtractionPlan& plan,
                                    const Partition& partition,
                                    std::optional<std::uint64_t> partition_seed = {}) {
  plan.validate();
  Provenance prov = detail::base_provenance(g, plan);
  prov.mode = to_string(ExtractionMode::multilevel);
  prov.partition_seed = partition_seed;
  prov.seed_policy = describe(plan.seed);
  if (g.edge_count() == 0) {
    log::warn("multilevel_backbone: graph has no edges; backbone is empty");
    return detail::make_backbone(g, {}, std::move(prov));
  }

  const ComponentStructure cs = extract_component_structure(g, partition, partition_seed);
  std::vector<EdgeId> kept;
  auto run = [&](const Subgraph& part, const char* kind, std::size_t index) {
    const auto local = detail::select(part.graph, plan);
    for (EdgeId id : local) kept.push_back(part.parent_edges[id]);
    prov.components.push_back(
        {kind, index, part.graph.node_count(), part.graph.edge_count(), local.size()});
  };
  for (std::size_t i = 0; i < cs.locals.size(); ++i) run(cs.locals[i].part, "local", i);
  for (std::size_t i = 0; i < cs.globals.size(); ++i) run(cs.globals[i], "global", i);
  return detail::make_backbone(g, std::move(kept), std::move(prov));
}

/// Detects communities per plan.seed, then runs the multilevel extraction.
inline Backbone multilevel_backbone(const Graph& g, const ExtractionPlan& plan) {
  plan.validate();
  if (g.edge_count() == 0) return multilevel_backbone(g, plan, Partition::singletons(g.node_count()));
  const DetectedPartition d = detect_communities(g, plan.seed);
  return multilevel_backbone(g, plan, d.partition, d.seed);
}

inline Backbone extract_backbone(const Graph& g, const ExtractionPlan& plan) {
  return plan.mode == ExtractionMode::classical ? classical_backbone(g, plan)
                                                : multilevel_backbone(g, plan);
}

}  // namespace spine
