#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spine/error.hpp"
#include "spine/graph.hpp"
#include "spine/properties.hpp"

namespace spine {

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov

/// sup_x |F_a(x) - F_b(x)| over the two empirical CDFs.
template <class T>
double ks_statistic(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_statistic: empty sample");
  std::vector<T> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < x.size() && j < y.size()) {
    const T v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

template <class T>
double ks_statistic(const std::vector<T>& a, const std::vector<T>& b) {
  return ks_statistic(std::span<const T>(a), std::span<const T>(b));
}

// ---------------------------------------------------------------------------
// Network portraits

/// rows[l][k] = number of nodes with exactly k nodes at hop distance l.
/// Row 0 has V at k=1; every row sums to V. Row count is diameter + 1.
struct Portrait {
  std::vector<std::vector<std::size_t>> rows;
  std::size_t node_count = 0;
};

inline Portrait build_portrait(const Graph& g) {
  const std::size_t n = g.node_count();
  Portrait p;
  p.node_count = n;
  if (n == 0) return p;
  std::vector<std::vector<std::size_t>> shells(n);  // shells[s][l] = |{t : d(s,t) = l}|
  std::vector<int> dist;
  int max_l = 0;
  for (NodeId s = 0; s < n; ++s) {
    bfs_distances(g, s, dist);
    for (int d : dist) {
      if (d == kUnreachable) continue;
      if (static_cast<std::size_t>(d) >= shells[s].size()) shells[s].resize(d + 1, 0);
      ++shells[s][d];
      max_l = std::max(max_l, d);
    }
  }
  p.rows.assign(max_l + 1, std::vector<std::size_t>(n, 0));
  for (NodeId s = 0; s < n; ++s) {
    for (int l = 0; l <= max_l; ++l) {
      const std::size_t k = static_cast<std::size_t>(l) < shells[s].size() ? shells[s][l] : 0;
      ++p.rows[l][k];
    }
  }
  return p;
}

/// Joint distribution P(l, k) proportional to k * B[l][k], keyed by (l, k).
inline std::map<std::pair<std::size_t, std::size_t>, double> portrait_distribution(
    const Portrait& p) {
  std::map<std::pair<std::size_t, std::size_t>, double> out;
  double total = 0.0;
  for (std::size_t l = 0; l < p.rows.size(); ++l)
    for (std::size_t k = 1; k < p.rows[l].size(); ++k) total += double(k) * p.rows[l][k];
  for (std::size_t l = 0; l < p.rows.size(); ++l)
    for (std::size_t k = 1; k < p.rows[l].size(); ++k)
      if (p.rows[l][k]) out[{l, k}] = double(k) * p.rows[l][k] / total;
  return out;
}

/// Jensen-Shannon divergence (base 2) between two portrait distributions; in [0, 1].
inline double portrait_divergence(const Portrait& a, const Portrait& b) {
  if (a.node_count == 0 || b.node_count == 0)
    throw ValidationError("portrait_divergence: empty graph");
  const auto p = portrait_distribution(a);
  const auto q = portrait_distribution(b);
  auto kl_to_mixture = [](const auto& x, const auto& y) {
    double s = 0.0;
    for (const auto& [key, px] : x) {
      const auto it = y.find(key);
      const double m = 0.5 * (px + (it == y.end() ? 0.0 : it->second));
      s += px * std::log2(px / m);
    }
    return s;
  };
  const double jsd = 0.5 * kl_to_mixture(p, q) + 0.5 * kl_to_mixture(q, p);
  return std::clamp(jsd, 0.0, 1.0);
}

inline double portrait_divergence(const Graph& g1, const Graph& g2) {
  return portrait_divergence(build_portrait(g1), build_portrait(g2));
}

// ---------------------------------------------------------------------------
// Laplacian spectra

inline constexpr double kZeroEigenvalue = 1e-8;

/// Eigenvalues of the unweighted combinatorial Laplacian D - A, ascending.
struct Spectrum {
  std::vector<double> eigenvalues;
};

inline Spectrum laplacian_spectrum(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Spectrum s;
  if (n == 0) return s;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    L(e.u, e.v) -= 1.0;
    L(e.v, e.u) -= 1.0;
    L(e.u, e.u) += 1.0;
    L(e.v, e.v) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Laplacian eigensolve failed for graph '" + g.name() + "'");
  s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

inline std::size_t zero_eigenvalue_count(const Spectrum& s) {
  return static_cast<std::size_t>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [](double x) { return std::abs(x) < kZeroEigenvalue; }));
}

/// Smallest eigenvalue above the zero threshold, or 0 if there is none.
inline double spectral_gap(const Spectrum& s) {
  for (double x : s.eigenvalues)
    if (x >= kZeroEigenvalue) return x;
  return 0.0;
}

/// Throws NumericalError unless: min eigenvalue ~ 0, zero multiplicity equals
/// the component count, and the trace equals 2E.
inline void check_spectrum(const Graph& g, const Spectrum& s) {
  if (s.eigenvalues.size() != g.node_count())
    throw NumericalError("spectrum size mismatch for graph '" + g.name() + "'");
  if (s.eigenvalues.empty()) return;
  if (std::abs(s.eigenvalues.front()) > kZeroEigenvalue)
    throw NumericalError("smallest Laplacian eigenvalue is not zero for graph '" + g.name() + "'");
  if (zero_eigenvalue_count(s) != connected_components(g).count)
    throw NumericalError("zero-eigenvalue multiplicity differs from component count for graph '" +
                         g.name() + "'");
  double trace = 0.0;
  for (double x : s.eigenvalues) trace += x;
  const double expected = 2.0 * static_cast<double>(g.edge_count());
  if (std::abs(trace - expected) > 1e-6 * std::max(1.0, expected))
    throw NumericalError("Laplacian trace differs from 2E for graph '" + g.name() + "'");
}

/// Euclidean distance between ascending spectra. The shorter one is padded
/// with zero eigenvalues (as if it had extra isolated nodes).
inline double laplacian_spectrum_distance(const Spectrum& a, const Spectrum& b) {
  std::vector<double> x = a.eigenvalues, y = b.eigenvalues;
  const std::size_t n = std::max(x.size(), y.size());
  x.insert(x.begin(), n - x.size(), 0.0);
  y.insert(y.begin(), n - y.size(), 0.0);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

inline double laplacian_spectrum_distance(const Graph& g1, const Graph& g2) {
  if (g1.empty() || g2.empty()) throw ValidationError("laplacian_spectrum_distance: empty graph");
  return laplacian_spectrum_distance(laplacian_spectrum(g1), laplacian_spectrum(g2));
}

// ---------------------------------------------------------------------------
// NetLSD heat trace

struct HeatTrace {
  std::vector<double> times;
  std::vector<double> values;  // h(t) = sum_j exp(-t * lambda_j)
};

/// `count` log-spaced times in [lo, hi].
inline std::vector<double> log_timescales(double lo = 1e-2, double hi = 1e2,
                                          std::size_t count = 250) {
  std::vector<double> t(count);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i)
    t[i] = std::pow(10.0, count == 1 ? a : a + (b - a) * double(i) / double(count - 1));
  return t;
}

inline HeatTrace heat_trace(const Spectrum& s, std::vector<double> times = log_timescales()) {
  HeatTrace h{std::move(times), {}};
  h.values.reserve(h.times.size());
  for (double t : h.times) {
    double sum = 0.0;
    for (double lambda : s.eigenvalues) sum += std::exp(-t * lambda);
    h.values.push_back(sum);
  }
  return h;
}

inline double netlsd_distance(const HeatTrace& a, const HeatTrace& b) {
  if (a.times != b.times) throw ValidationError("netlsd_distance: mismatched time grids");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
  return std::sqrt(s);
}

inline double netlsd_distance(const Graph& g1, const Graph& g2) {
  if (g1.empty() || g2.empty()) throw ValidationError("netlsd_distance: empty graph");
  return netlsd_distance(heat_trace(laplacian_spectrum(g1)), heat_trace(laplacian_spectrum(g2)));
}

}  // namespace spine
