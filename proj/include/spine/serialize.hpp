#pragma once

// JSON forms of provenance, component manifests and metrics reports.

#include <optional>
#include <string>

#include <json.hpp>

#include "spine/components.hpp"
#include "spine/evaluation.hpp"
#include "spine/filters.hpp"
#include "spine/properties.hpp"

NLOHMANN_JSON_NAMESPACE_BEGIN
template <class T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v)
      j = *v;
    else
      j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null())
      v.reset();
    else
      v = j.get<T>();
  }
};
NLOHMANN_JSON_NAMESPACE_END

namespace spine {

using json = nlohmann::json;

inline void to_json(json& j, const ComponentBudget& c) {
  j = {{"kind", c.kind}, {"index", c.index}, {"nodes", c.nodes}, {"edges", c.edges},
       {"budget", c.budget}};
}
inline void from_json(const json& j, ComponentBudget& c) {
  j.at("kind").get_to(c.kind);
  j.at("index").get_to(c.index);
  j.at("nodes").get_to(c.nodes);
  j.at("edges").get_to(c.edges);
  j.at("budget").get_to(c.budget);
}

inline void to_json(json& j, const Provenance& p) {
  j = {{"method", p.method},
       {"mode", p.mode},
       {"fraction", p.fraction},
       {"alpha", p.alpha},
       {"partition_seed", p.partition_seed},
       {"seed_policy", p.seed_policy},
       {"parent", p.parent},
       {"parent_nodes", p.parent_nodes},
       {"parent_edges", p.parent_edges},
       {"classical_budget", p.classical_budget},
       {"components", p.components},
       {"tiebreak", p.tiebreak}};
}
inline void from_json(const json& j, Provenance& p) {
  j.at("method").get_to(p.method);
  j.at("mode").get_to(p.mode);
  j.at("fraction").get_to(p.fraction);
  j.at("alpha").get_to(p.alpha);
  j.at("partition_seed").get_to(p.partition_seed);
  j.at("seed_policy").get_to(p.seed_policy);
  j.at("parent").get_to(p.parent);
  j.at("parent_nodes").get_to(p.parent_nodes);
  j.at("parent_edges").get_to(p.parent_edges);
  j.at("classical_budget").get_to(p.classical_budget);
  j.at("components").get_to(p.components);
  j.at("tiebreak").get_to(p.tiebreak);
}

inline void to_json(json& j, const GlobalProperties& g) {
  j = {{"node_count", g.node_count},
       {"edge_count", g.edge_count},
       {"component_count", g.component_count},
       {"density", g.density},
       {"diameter", g.diameter},
       {"avg_shortest_path", g.avg_shortest_path},
       {"path_length_estimate", g.path_length_estimate},
       {"avg_degree", g.avg_degree},
       {"avg_weighted_degree", g.avg_weighted_degree},
       {"max_degree", g.max_degree},
       {"assortativity", g.assortativity},
       {"avg_clustering", g.avg_clustering},
       {"transitivity", g.transitivity},
       {"global_efficiency", g.global_efficiency},
       {"total_weight", g.total_weight}};
}
inline void from_json(const json& j, GlobalProperties& g) {
  j.at("node_count").get_to(g.node_count);
  j.at("edge_count").get_to(g.edge_count);
  j.at("component_count").get_to(g.component_count);
  j.at("density").get_to(g.density);
  j.at("diameter").get_to(g.diameter);
  j.at("avg_shortest_path").get_to(g.avg_shortest_path);
  j.at("path_length_estimate").get_to(g.path_length_estimate);
  j.at("avg_degree").get_to(g.avg_degree);
  j.at("avg_weighted_degree").get_to(g.avg_weighted_degree);
  j.at("max_degree").get_to(g.max_degree);
  j.at("assortativity").get_to(g.assortativity);
  j.at("avg_clustering").get_to(g.avg_clustering);
  j.at("transitivity").get_to(g.transitivity);
  j.at("global_efficiency").get_to(g.global_efficiency);
  j.at("total_weight").get_to(g.total_weight);
}

inline void to_json(json& j, const CommunityConnectivity& c) {
  j = {{"inter", c.inter}, {"intra", c.intra}};
}
inline void from_json(const json& j, CommunityConnectivity& c) {
  j.at("inter").get_to(c.inter);
  j.at("intra").get_to(c.intra);
}

inline void to_json(json& j, const MetricsReport& r) {
  j = {{"original", r.original},
       {"backbone", r.backbone},
       {"preserved_node_fraction", r.preserved_node_fraction},
       {"preserved_weight_fraction", r.preserved_weight_fraction},
       {"ks_degree", r.ks_degree},
       {"ks_weight", r.ks_weight},
       {"portrait_divergence", r.portrait_divergence},
       {"laplacian_distance", r.laplacian_distance},
       {"netlsd_distance", r.netlsd_distance},
       {"spectral_note", r.spectral_note},
       {"modularity_original", r.modularity_original},
       {"modularity_backbone", r.modularity_backbone},
       {"participation_histograms",
        {{"bins", kParticipationBins},
         {"original", r.participation.original},
         {"backbone", r.participation.backbone}}},
       {"inter_intra",
        {{"original", r.inter_intra.original},
         {"backbone_original_partition", r.inter_intra.backbone_original_partition},
         {"backbone_own_partition", r.inter_intra.backbone_own_partition}}},
       {"seeds",
        {{"policy", r.seed_policy},
         {"original_partition", r.original_partition_seed},
         {"backbone_partition", r.backbone_partition_seed}}},
       {"provenance", r.provenance}};
}
inline void from_json(const json& j, MetricsReport& r) {
  j.at("original").get_to(r.original);
  j.at("backbone").get_to(r.backbone);
  j.at("preserved_node_fraction").get_to(r.preserved_node_fraction);
  j.at("preserved_weight_fraction").get_to(r.preserved_weight_fraction);
  j.at("ks_degree").get_to(r.ks_degree);
  j.at("ks_weight").get_to(r.ks_weight);
  j.at("portrait_divergence").get_to(r.portrait_divergence);
  j.at("laplacian_distance").get_to(r.laplacian_distance);
  j.at("netlsd_distance").get_to(r.netlsd_distance);
  j.at("spectral_note").get_to(r.spectral_note);
  j.at("modularity_original").get_to(r.modularity_original);
  j.at("modularity_backbone").get_to(r.modularity_backbone);
  const auto& ph = j.at("participation_histograms");
  ph.at("original").get_to(r.participation.original);
  ph.at("backbone").get_to(r.participation.backbone);
  const auto& ii = j.at("inter_intra");
  ii.at("original").get_to(r.inter_intra.original);
  ii.at("backbone_original_partition").get_to(r.inter_intra.backbone_original_partition);
  ii.at("backbone_own_partition").get_to(r.inter_intra.backbone_own_partition);
  const auto& s = j.at("seeds");
  s.at("policy").get_to(r.seed_policy);
  s.at("original_partition").get_to(r.original_partition_seed);
  s.at("backbone_partition").get_to(r.backbone_partition_seed);
  j.at("provenance").get_to(r.provenance);
}

/// Manifest written next to dumped component edge lists.
inline json component_manifest(const ComponentStructure& cs) {
  json comps = json::array();
  for (std::size_t i = 0; i < cs.locals.size(); ++i) {
    const auto& g = cs.locals[i].part.graph;
    comps.push_back({{"kind", "local"},
                     {"index", i},
                     {"community", cs.locals[i].community},
                     {"file", "local_" + std::to_string(i) + ".edges"},
                     {"nodes", g.node_count()},
                     {"edges", g.edge_count()},
                     {"weight", g.total_weight()}});
  }
  for (std::size_t i = 0; i < cs.globals.size(); ++i) {
    const auto& g = cs.globals[i].graph;
    comps.push_back({{"kind", "global"},
                     {"index", i},
                     {"file", "global_" + std::to_string(i) + ".edges"},
                     {"nodes", g.node_count()},
                     {"edges", g.edge_count()},
                     {"weight", g.total_weight()}});
  }
  return {{"communities", cs.partition.community_count()},
          {"partition_seed", cs.seed},
          {"local_count", cs.locals.size()},
          {"global_count", cs.globals.size()},
          {"components", comps}};
}

}  // namespace spine
