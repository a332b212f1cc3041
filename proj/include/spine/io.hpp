#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <set>
#include <vector>

#include "spine/error.hpp"
#include "spine/graph.hpp"
#include "spine/log.hpp"

namespace spine {

struct ParseOptions {
  char comment = '#';
  double default_weight = 1.0;
};

struct LoadSummary {
  std::size_t lines = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t parallel_merged = 0;
  std::size_t isolated_dropped = 0;  // labels seen only in self-loops
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\v\f");
  return s.substr(first, last - first + 1);
}

// Splits on a single comma when the line has one, otherwise on runs of whitespace.
inline std::vector<std::string_view> split_fields(std::string_view line, std::size_t lineno) {
  std::vector<std::string_view> out;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      auto field = trim(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                            : comma - start));
      if (field.empty()) throw ParseError("empty field", lineno);
      out.push_back(field);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline double parse_weight(std::string_view field, std::size_t lineno) {
  double w = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("invalid weight '" + std::string(field) + "'", lineno);
  return w;
}

}  // namespace detail

/// Reads a `u v [w]` edge list. Node ids follow first appearance among
/// non-self-loop lines; labels that only occur in self-loops are dropped.
inline Graph read_edge_list(std::istream& in, const ParseOptions& options = {},
                            LoadSummary* summary = nullptr) {
  struct RawLine {
    std::string a, b;
    double w;
  };
  std::vector<RawLine> raw;
  std::set<std::string, std::less<>> loop_only;
  LoadSummary s;
  std::string line;
  while (std::getline(in, line)) {
    ++s.lines;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == options.comment) continue;
    const auto fields = detail::split_fields(body, s.lines);
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError("expected 'u v [w]', got " + std::to_string(fields.size()) + " fields",
                       s.lines);
    const double w = fields.size() == 3 ? detail::parse_weight(fields[2], s.lines)
                                        : options.default_weight;
    if (!std::isfinite(w) || w <= 0.0)
      throw ValidationError("line " + std::to_string(s.lines) + ": weight must be > 0");
    ++s.edges_read;
    if (fields[0] == fields[1]) {
      ++s.self_loops_dropped;
      loop_only.emplace(fields[0]);
      continue;
    }
    raw.push_back({std::string(fields[0]), std::string(fields[1]), w});
  }

  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) edges.push_back({id_of(r.a), id_of(r.b), r.w});
  for (const auto& label : loop_only) {
    if (!ids.contains(label)) {
      ++s.isolated_dropped;
      log::warn("node '" + label + "' appears only in self-loops; dropped");
    }
  }

  CanonicalizeStats stats;
  Graph g = Graph::from_edges(std::move(labels), std::move(edges), &stats);
  s.parallel_merged = stats.parallel_merged;
  if (summary) *summary = s;
  return g;
}

inline Graph load_edge_list(const std::filesystem::path& path, const ParseOptions& options = {},
                            LoadSummary* summary = nullptr) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return read_edge_list(in, options, summary).named(path.string());
}

/// Shortest text that parses back to the same double.
inline std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges())
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << format_number(e.weight) << '\n';
}

inline void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_edge_list(out, g);
}

/// Sidecar `id<TAB>label` table for the label -> dense id mapping.
inline void write_node_table(std::ostream& out, const Graph& g) {
  for (NodeId i = 0; i < g.node_count(); ++i) out << i << '\t' << g.label(i) << '\n';
}

}  // namespace spine
