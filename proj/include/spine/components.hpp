#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spine/community.hpp"
#include "spine/graph.hpp"
#include "spine/properties.hpp"

namespace spine {

struct LocalComponent {
  CommunityId community = 0;
  Subgraph part;
};

/// Local components are the intra-community subgraphs (one per community that
/// has at least one internal edge); global components are the connected pieces
/// of the inter-community subgraph. Together their edges partition the parent's.
struct ComponentStructure {
  std::vector<LocalComponent> locals;
  std::vector<Subgraph> globals;
  Partition partition;
  std::optional<std::uint64_t> seed;

  std::size_t edge_total() const {
    std::size_t n = 0;
    for (const auto& l : locals) n += l.part.graph.edge_count();
    for (const auto& g : globals) n += g.graph.edge_count();
    return n;
  }
};

inline ComponentStructure extract_component_structure(const Graph& g, const Partition& p,
                                                      std::optional<std::uint64_t> seed = {}) {
  p.require_covers(g);
  ComponentStructure cs;
  cs.partition = p;
  cs.seed = seed;

  std::vector<std::vector<EdgeId>> intra(p.community_count());
  std::vector<EdgeId> inter;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (p[e.u] == p[e.v])
      intra[p[e.u]].push_back(id);
    else
      inter.push_back(id);
  }
  for (CommunityId c = 0; c < intra.size(); ++c) {
    if (intra[c].empty()) continue;
    cs.locals.push_back({c, edge_subgraph(g, intra[c])});
  }
  if (inter.empty()) return cs;

  // Connected pieces of the inter-community subgraph, mapped back to parent edges.
  Subgraph bridge = edge_subgraph(g, inter);
  const ComponentLabels labels = connected_components(bridge.graph);
  std::vector<std::vector<EdgeId>> pieces(labels.count);
  for (EdgeId id = 0; id < bridge.graph.edge_count(); ++id)
    pieces[labels.component[bridge.graph.edge(id).u]].push_back(bridge.parent_edges[id]);
  for (const auto& piece : pieces) cs.globals.push_back(edge_subgraph(g, piece));
  return cs;
}

}  // namespace spine
