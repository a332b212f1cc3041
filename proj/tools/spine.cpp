// spine: backbone extraction and evaluation from the command line.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spine/spine.hpp"

namespace fs = std::filesystem;
using namespace spine;

namespace {

enum Exit : int { kOk = 0, kUsage = 2, kSemantic = 3, kNumerical = 4 };

// Raised for bad flags or unreadable inputs; always exits 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out = ".";
  std::string seed;
  bool json = false;
  bool quiet = false;
  bool verbose = false;
};

SeedChoice parse_seed(const std::string& text, const char* origin) {
  if (text == "auto") return SeedChoice::automatic();
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError(std::string(origin) + ": expected a non-negative integer or 'auto', got '" +
                     text + "'");
  return SeedChoice::exactly(v);
}

// --seed wins, then SPINE_SEED, then best-of-10.
SeedChoice resolve_seed(const Common& c) {
  if (!c.seed.empty()) return parse_seed(c.seed, "--seed");
  if (const char* env = std::getenv("SPINE_SEED"); env && *env) return parse_seed(env, "SPINE_SEED");
  return SeedChoice::automatic();
}

Graph load(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("input file '" + path + "' does not exist");
  try {
    LoadSummary s;
    Graph g = load_edge_list(path, {}, &s);
    if (s.self_loops_dropped || s.parallel_merged)
      log::info(path + ": dropped " + std::to_string(s.self_loops_dropped) + " self-loops, merged " +
                std::to_string(s.parallel_merged) + " parallel edges");
    return g;
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

FilterKind parse_filter(const std::string& s) {
  return s == "df" ? FilterKind::disparity : FilterKind::global_threshold;
}

std::string fmt(std::optional<double> v) {
  if (!v) return "-";
  std::ostringstream o;
  o << std::setprecision(6) << *v;
  return o.str();
}

// ---------------------------------------------------------------------------

struct ExtractArgs {
  std::string in;
  std::string filter = "gt";
  std::string mode = "multilevel";
  std::optional<double> fraction;
  std::optional<double> alpha;
  bool node_map = false;
};

int run_extract(const ExtractArgs& a, const Common& c) {
  if (a.fraction && a.alpha) throw UsageError("--fraction and --alpha are mutually exclusive");
  ExtractionPlan plan;
  plan.filter = parse_filter(a.filter);
  plan.mode = a.mode == "classical" ? ExtractionMode::classical : ExtractionMode::multilevel;
  plan.seed = resolve_seed(c);
  if (a.alpha) {
    if (plan.filter != FilterKind::disparity) throw UsageError("--alpha requires --filter df");
    if (!(*a.alpha >= 0.0 && *a.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
    plan.selection = Alpha{*a.alpha};
  } else {
    const double f = a.fraction.value_or(0.3);
    if (!(f >= 0.0 && f <= 1.0)) throw UsageError("--fraction must lie in [0, 1]");
    plan.selection = Fraction{f};
  }

  const Graph g = load(a.in);
  const fs::path out = prepare_out(c.out);
  const Backbone b = extract_backbone(g, plan);
  save_edge_list(out / "backbone.edges", b.graph);
  write_json(out / "provenance.json", b.provenance);
  if (a.node_map) {
    std::ostringstream table;
    write_node_table(table, g);
    write_text(out / (fs::path(a.in).stem().string() + ".nodes.tsv"), table.str());
  }

  if (c.json) {
    std::cout << json{{"nodes", b.graph.node_count()},
                      {"edges", b.graph.edge_count()},
                      {"weight", b.graph.total_weight()},
                      {"provenance", b.provenance}}
                     .dump()
              << '\n';
  } else {
    std::cout << "backbone: V=" << b.graph.node_count() << " E=" << b.graph.edge_count()
              << " W=" << format_number(b.graph.total_weight()) << " (" << b.provenance.method
              << ", " << b.provenance.mode << ")\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int run_components(const std::string& in, const Common& c) {
  const Graph g = load(in);
  if (g.edge_count() == 0) throw ValidationError("graph has no edges");
  const fs::path out = prepare_out(c.out);
  const DetectedPartition d = detect_communities(g, resolve_seed(c));
  const ComponentStructure cs = extract_component_structure(g, d.partition, d.seed);

  for (std::size_t i = 0; i < cs.locals.size(); ++i)
    save_edge_list(out / ("local_" + std::to_string(i) + ".edges"), cs.locals[i].part.graph);
  for (std::size_t i = 0; i < cs.globals.size(); ++i)
    save_edge_list(out / ("global_" + std::to_string(i) + ".edges"), cs.globals[i].graph);
  json manifest = component_manifest(cs);
  manifest["modularity"] = d.modularity;
  manifest["seed_policy"] = describe(resolve_seed(c));
  write_json(out / "manifest.json", manifest);
  std::ostringstream tsv;
  write_partition_tsv(tsv, g, d.partition);
  write_text(out / "partition.tsv", tsv.str());

  if (c.json) {
    std::cout << manifest.dump() << '\n';
  } else {
    std::cout << "communities: " << d.partition.community_count() << " (Q=" << fmt(d.modularity)
              << ", seed " << d.seed << ")\nlocal components: " << cs.locals.size()
              << "\nglobal components: " << cs.globals.size() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct EvaluateArgs {
  std::string original;
  std::string backbone;
  std::string provenance;
  bool force_spectral = false;
  bool dump_spectra = false;
};

void dump_spectra(const fs::path& out, const Graph& g, const std::string& tag) {
  const Spectrum s = laplacian_spectrum(g);
  std::ostringstream ev;
  for (double x : s.eigenvalues) ev << format_number(x) << '\n';
  write_text(out / ("spectrum_" + tag + ".txt"), ev.str());
  const HeatTrace h = heat_trace(s);
  std::ostringstream csv;
  csv << "t,h\n";
  for (std::size_t i = 0; i < h.times.size(); ++i)
    csv << format_number(h.times[i]) << ',' << format_number(h.values[i]) << '\n';
  write_text(out / ("heat_trace_" + tag + ".csv"), csv.str());
}

int run_evaluate(const EvaluateArgs& a, const Common& c) {
  const Graph original = load(a.original);
  const Graph backbone = load(a.backbone);
  std::optional<Provenance> prov;
  if (!a.provenance.empty()) {
    std::ifstream in(a.provenance);
    if (!in) throw UsageError("cannot read '" + a.provenance + "'");
    try {
      prov = json::parse(in).get<Provenance>();
    } catch (const json::exception& e) {
      throw UsageError(a.provenance + ": " + e.what());
    }
  }
  EvaluationOptions opts;
  opts.seed = resolve_seed(c);
  opts.force_spectral = a.force_spectral;
  const fs::path out = prepare_out(c.out);
  const MetricsReport r = evaluate(original, backbone, opts, prov ? &*prov : nullptr);
  write_json(out / "report.json", r);
  if (a.dump_spectra) {
    dump_spectra(out, original, "original");
    if (!backbone.empty()) dump_spectra(out, backbone, "backbone");
  }

  if (c.json) {
    std::cout << json(r).dump() << '\n';
    return kOk;
  }
  auto row = [](const char* name, const std::string& value) {
    std::cout << std::left << std::setw(28) << name << value << '\n';
  };
  row("nodes (original/backbone)",
      std::to_string(r.original.node_count) + " / " + std::to_string(r.backbone.node_count));
  row("edges (original/backbone)",
      std::to_string(r.original.edge_count) + " / " + std::to_string(r.backbone.edge_count));
  row("preserved node fraction", fmt(r.preserved_node_fraction));
  row("preserved weight fraction", fmt(r.preserved_weight_fraction));
  row("ks degree", fmt(r.ks_degree));
  row("ks weight", fmt(r.ks_weight));
  row("portrait divergence", fmt(r.portrait_divergence));
  row("laplacian distance", fmt(r.laplacian_distance));
  row("netlsd distance", fmt(r.netlsd_distance));
  row("modularity (original)", fmt(r.modularity_original));
  row("modularity (backbone)", fmt(r.modularity_backbone));
  if (!r.spectral_note.empty()) row("note", r.spectral_note);
  return kOk;
}

// ---------------------------------------------------------------------------

// "a:b:step" (inclusive, rounded to 1e-9) or a comma-separated list.
std::vector<double> parse_fractions(const std::string& text) {
  auto number = [&](std::string_view s) {
    s = detail::trim(s);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("--fractions: invalid number '" + std::string(s) + "'");
    return v;
  };
  std::vector<double> out;
  if (detail::trim(text).empty()) throw UsageError("--fractions: list is empty");
  if (text.find(':') != std::string::npos) {
    std::vector<std::string_view> parts;
    std::string_view rest = text;
    for (std::size_t p; (p = rest.find(':')) != rest.npos; rest.remove_prefix(p + 1))
      parts.push_back(rest.substr(0, p));
    parts.push_back(rest);
    if (parts.size() != 3) throw UsageError("--fractions: expected start:stop:step");
    const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0)) throw UsageError("--fractions: step must be > 0");
    for (std::size_t i = 0;; ++i) {
      const double f = std::round((lo + double(i) * step) * 1e9) / 1e9;
      if (f > hi + 1e-9) break;
      out.push_back(f);
    }
  } else {
    std::string_view rest = text;
    while (true) {
      const auto p = rest.find(',');
      out.push_back(number(rest.substr(0, p)));
      if (p == rest.npos) break;
      rest.remove_prefix(p + 1);
    }
  }
  try {
    validate_fractions(out);
  } catch (const ValidationError& e) {
    throw UsageError(std::string("--fractions: ") + e.what());
  }
  return out;
}

struct SweepArgs {
  std::string in;
  std::string filter = "gt";
  std::string fractions = "0.1:0.9:0.1";
  std::size_t jobs = 1;
  bool force_spectral = false;
};

int run_sweep(const SweepArgs& a, const Common& c) {
  const std::vector<double> fractions = parse_fractions(a.fractions);
  const Graph g = load(a.in);
  ExtractionPlan plan;
  plan.filter = parse_filter(a.filter);
  plan.seed = resolve_seed(c);
  SweepOptions opts;
  opts.jobs = a.jobs;
  opts.evaluation.force_spectral = a.force_spectral;
  const fs::path out = prepare_out(c.out);
  const auto points = sweep(g, plan, fractions, opts);
  const auto rows = sweep_rows(points, plan.filter);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_text(out / "sweep.csv", csv.str());

  if (c.json) {
    json j = json::array();
    for (const auto& p : points)
      j.push_back({{"fraction", p.fraction},
                   {"mode", to_string(p.mode)},
                   {"nodes", p.backbone_nodes},
                   {"edges", p.backbone_edges}});
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "sweep: " << fractions.size() << " fractions x 2 modes, " << rows.size()
              << " rows -> " << (out / "sweep.csv").string() << '\n';
  }
  return kOk;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Louvain seed: integer or 'auto' (default: $SPINE_SEED, else auto)");
  cmd->add_flag("--json", c.json, "Print a machine-readable summary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted network backbone extraction (classical and multilevel)"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("-q,--quiet", common.quiet, "Suppress warnings");
  app.add_flag("-v,--verbose", common.verbose, "Print informational messages");

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract a backbone");
  extract->add_option("--in", ex.in, "Input edge list")->required();
  extract->add_option("--filter", ex.filter, "gt (global threshold) or df (disparity filter)")
      ->check(CLI::IsMember({"gt", "df"}))
      ->capture_default_str();
  extract->add_option("--mode", ex.mode, "classical or multilevel")
      ->check(CLI::IsMember({"classical", "multilevel"}))
      ->capture_default_str();
  extract->add_option("--fraction", ex.fraction, "Fraction of edges to keep (default 0.3)");
  extract->add_option("--alpha", ex.alpha, "Significance level (disparity filter only)");
  extract->add_flag("--node-map", ex.node_map, "Also write the input's id<TAB>label table");
  add_common(extract, common);

  std::string components_in;
  auto* components = app.add_subcommand("components", "Dump local and global components");
  components->add_option("--in", components_in, "Input edge list")->required();
  add_common(components, common);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare a backbone with its original graph");
  evaluate_cmd->add_option("--original", ev.original, "Original edge list")->required();
  evaluate_cmd->add_option("--backbone", ev.backbone, "Backbone edge list")->required();
  evaluate_cmd->add_option("--provenance", ev.provenance, "provenance.json to embed in the report");
  evaluate_cmd->add_flag("--force-spectral", ev.force_spectral,
                         "Compute spectral distances even above 5000 nodes (dense eigensolve)");
  evaluate_cmd->add_flag("--dump-spectra", ev.dump_spectra,
                         "Write eigenvalues and heat traces next to the report");
  add_common(evaluate_cmd, common);

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate both modes over a range of fractions");
  sweep_cmd->add_option("--in", sw.in, "Input edge list")->required();
  sweep_cmd->add_option("--filter", sw.filter, "gt or df")
      ->check(CLI::IsMember({"gt", "df"}))
      ->capture_default_str();
  sweep_cmd->add_option("--fractions", sw.fractions, "start:stop:step or a comma-separated list")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sw.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--force-spectral", sw.force_spectral, "Compute spectral distances at any size");
  add_common(sweep_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  log::set_sink([&](log::Level level, std::string_view msg) {
    if (level == log::Level::warn && !common.quiet) std::cerr << "warning: " << msg << '\n';
    if (level == log::Level::info && common.verbose) std::cerr << msg << '\n';
  });

  try {
    if (*extract) return run_extract(ex, common);
    if (*components) return run_components(components_in, common);
    if (*evaluate_cmd) return run_evaluate(ev, common);
    return run_sweep(sw, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemantic;
  }
}
