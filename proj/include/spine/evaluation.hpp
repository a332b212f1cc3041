#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "spine/community.hpp"
#include "spine/distances.hpp"
#include "spine/error.hpp"
#include "spine/filters.hpp"
#include "spine/graph.hpp"
#include "spine/io.hpp"
#include "spine/multilevel.hpp"
#include "spine/properties.hpp"

namespace spine {

inline constexpr std::size_t kParticipationBins = 20;
using ParticipationHistogram = std::array<std::size_t, kParticipationBins>;

struct InterIntraReport {
  CommunityConnectivity original;
  CommunityConnectivity backbone_original_partition;  // original partition on surviving edges
  std::optional<CommunityConnectivity> backbone_own_partition;

  friend bool operator==(const InterIntraReport&, const InterIntraReport&) = default;
};

struct ParticipationReport {
  ParticipationHistogram original{};
  ParticipationHistogram backbone{};

  friend bool operator==(const ParticipationReport&, const ParticipationReport&) = default;
};

/// Everything measured for one (original, backbone) pair.
struct MetricsReport {
  GlobalProperties original;
  GlobalProperties backbone;  // all-zero when the backbone has no nodes
  double preserved_node_fraction = 0.0;
  double preserved_weight_fraction = 0.0;
  std::optional<double> ks_degree;
  std::optional<double> ks_weight;
  std::optional<double> portrait_divergence;
  std::optional<double> laplacian_distance;
  std::optional<double> netlsd_distance;
  std::string spectral_note;  // why spectral distances are missing, if they are
  double modularity_original = 0.0;
  std::optional<double> modularity_backbone;
  std::uint64_t original_partition_seed = 0;
  std::optional<std::uint64_t> backbone_partition_seed;
  std::string seed_policy;
  ParticipationReport participation;
  InterIntraReport inter_intra;
  std::optional<Provenance> provenance;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct EvaluationOptions {
  SeedChoice seed = SeedChoice::automatic();
  bool force_spectral = false;
  std::size_t spectral_node_limit = 5000;
  /// Reused instead of re-running Louvain on the original when present.
  std::optional<DetectedPartition> original_partition;
};

/// Throws ContainmentError unless every backbone edge exists in `original`
/// (matched by labels) with a bit-identical weight.
inline void check_containment(const Graph& original, const Graph& backbone) {
  for (const Edge& e : backbone.edges()) {
    const auto u = original.find(backbone.label(e.u));
    const auto v = original.find(backbone.label(e.v));
    if (!u || !v)
      throw ContainmentError("backbone node '" + backbone.label(!u ? e.u : e.v) +
                             "' is not in the original graph");
    const auto id = original.find_edge(*u, *v);
    if (!id)
      throw ContainmentError("backbone edge (" + backbone.label(e.u) + ", " + backbone.label(e.v) +
                             ") is not in the original graph");
    if (original.edge(*id).weight != e.weight)
      throw ContainmentError("backbone edge (" + backbone.label(e.u) + ", " + backbone.label(e.v) +
                             ") has a different weight than in the original graph");
  }
}

inline MetricsReport evaluate(const Graph& original, const Graph& backbone,
                              const EvaluationOptions& options = {},
                              const Provenance* provenance = nullptr) {
  if (original.edge_count() == 0) throw ValidationError("evaluate: original graph has no edges");
  check_containment(original, backbone);

  MetricsReport r;
  r.original = global_properties(original);
  if (!backbone.empty()) r.backbone = global_properties(backbone);
  r.preserved_node_fraction = double(backbone.node_count()) / double(original.node_count());
  r.preserved_weight_fraction = backbone.total_weight() / original.total_weight();
  r.seed_policy = describe(options.seed);
  if (provenance) r.provenance = *provenance;

  const auto so = degree_and_weight_sequences(original);
  const auto sb = degree_and_weight_sequences(backbone);
  if (!backbone.empty()) {
    r.ks_degree = ks_statistic(so.degrees, sb.degrees);
    r.ks_weight = ks_statistic(so.weights, sb.weights);
    r.portrait_divergence = portrait_divergence(original, backbone);
  }

  const std::size_t largest = std::max(original.node_count(), backbone.node_count());
  if (backbone.empty()) {
    r.spectral_note = "backbone is empty";
  } else if (largest > options.spectral_node_limit && !options.force_spectral) {
    r.spectral_note = "skipped: " + std::to_string(largest) + " nodes exceeds limit " +
                      std::to_string(options.spectral_node_limit) + " (use force)";
  } else {
    const Spectrum a = laplacian_spectrum(original);
    const Spectrum b = laplacian_spectrum(backbone);
    check_spectrum(original, a);
    check_spectrum(backbone, b);
    r.laplacian_distance = laplacian_spectrum_distance(a, b);
    r.netlsd_distance = netlsd_distance(heat_trace(a), heat_trace(b));
  }

  const DetectedPartition orig =
      options.original_partition ? *options.original_partition
                                 : detect_communities(original, options.seed);
  r.modularity_original = orig.modularity;
  r.original_partition_seed = orig.seed;
  r.participation.original =
      histogram01<kParticipationBins>(participation_coefficients(original, orig.partition));
  r.inter_intra.original = community_connectivity(original, orig.partition);
  if (!backbone.empty()) {
    const Partition carried = restrict_partition(original, orig.partition, backbone);
    r.inter_intra.backbone_original_partition = community_connectivity(backbone, carried);
  }
  if (backbone.edge_count() > 0) {
    const DetectedPartition own = detect_communities(backbone, options.seed);
    r.modularity_backbone = own.modularity;
    r.backbone_partition_seed = own.seed;
    r.participation.backbone =
        histogram01<kParticipationBins>(participation_coefficients(backbone, own.partition));
    r.inter_intra.backbone_own_partition = community_connectivity(backbone, own.partition);
  }
  return r;
}

inline MetricsReport evaluate(const Graph& original, const Backbone& backbone,
                              const EvaluationOptions& options = {}) {
  return evaluate(original, backbone.graph, options, &backbone.provenance);
}

// ---------------------------------------------------------------------------
// Fraction sweeps

struct SweepPoint {
  double fraction = 0.0;
  ExtractionMode mode = ExtractionMode::classical;
  std::size_t backbone_nodes = 0;
  std::size_t backbone_edges = 0;
  MetricsReport report;
};

struct SweepOptions {
  EvaluationOptions evaluation;
  std::size_t jobs = 1;
};

inline void validate_fractions(std::span<const double> fractions) {
  if (fractions.empty()) throw ValidationError("sweep: fraction list is empty");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] <= 1.0))
      throw ValidationError("sweep: fractions must lie in (0, 1]");
    if (i > 0 && !(fractions[i] > fractions[i - 1]))
      throw ValidationError("sweep: fractions must be strictly ascending");
  }
}

/// One evaluation per (fraction, mode). The original's partition is detected
/// once and shared by every multilevel extraction and every evaluation.
inline std::vector<SweepPoint> sweep(const Graph& original, ExtractionPlan plan,
                                     std::span<const double> fractions,
                                     const SweepOptions& options = {}) {
  validate_fractions(fractions);
  EvaluationOptions eval = options.evaluation;
  eval.seed = plan.seed;
  if (!eval.original_partition) eval.original_partition = detect_communities(original, plan.seed);
  const DetectedPartition& part = *eval.original_partition;

  std::vector<SweepPoint> points(2 * fractions.size());
  auto task = [&](std::size_t i) {
    ExtractionPlan p = plan;
    p.selection = Fraction{fractions[i / 2]};
    p.mode = i % 2 == 0 ? ExtractionMode::classical : ExtractionMode::multilevel;
    const Backbone b = p.mode == ExtractionMode::classical
                           ? classical_backbone(original, p)
                           : multilevel_backbone(original, p, part.partition, part.seed);
    points[i] = {fractions[i / 2], p.mode, b.graph.node_count(), b.graph.edge_count(),
                 evaluate(original, b, eval)};
  };

  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, points.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) task(i);
    return points;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < points.size();) task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return points;
}

struct SweepRow {
  double fraction;
  std::string mode;
  std::string filter;
  std::string metric;
  std::optional<double> value;
};

inline std::vector<SweepRow> sweep_rows(std::span<const SweepPoint> points, FilterKind filter) {
  std::vector<SweepRow> rows;
  for (const auto& p : points) {
    const auto& r = p.report;
    auto add = [&](const char* metric, std::optional<double> v) {
      rows.push_back({p.fraction, to_string(p.mode), to_string(filter), metric, v});
    };
    add("nodes", double(p.backbone_nodes));
    add("edges", double(p.backbone_edges));
    add("preserved_node_fraction", r.preserved_node_fraction);
    add("preserved_weight_fraction", r.preserved_weight_fraction);
    add("ks_degree", r.ks_degree);
    add("ks_weight", r.ks_weight);
    add("portrait_divergence", r.portrait_divergence);
    add("laplacian_distance", r.laplacian_distance);
    add("netlsd_distance", r.netlsd_distance);
    add("modularity_backbone", r.modularity_backbone);
    add("inter_backbone", r.inter_intra.backbone_original_partition.inter);
    add("intra_backbone", r.inter_intra.backbone_original_partition.intra);
  }
  return rows;
}

/// Long format: fraction,mode,filter,metric,value (missing values are empty).
inline void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "fraction,mode,filter,metric,value\n";
  for (const auto& r : rows) {
    out << format_number(r.fraction) << ',' << r.mode << ',' << r.filter << ',' << r.metric << ','
        << (r.value ? format_number(*r.value) : std::string()) << '\n';
  }
}

}  // namespace spine
