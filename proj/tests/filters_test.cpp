#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "spine/filters.hpp"
#include "support.hpp"

using namespace spine;

namespace {

// Composite Simpson rule for the null-model tail integral.
double tail_integral(double p, std::size_t k) {
  if (k <= 1) return 1.0;
  auto f = [k](double x) { return double(k - 1) * std::pow(1.0 - x, double(k) - 2.0); };
  const std::size_t n = 4000;
  const double h = (1.0 - p) / n;
  double s = f(p) + f(1.0);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(p + i * h);
  return s * h / 3.0;
}

std::vector<EdgeId> ids_of(const Backbone& b) { return b.parent_edges; }

bool subset(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Graph rescaled(const Graph& g, double factor) {
  std::vector<Edge> e(g.edges().begin(), g.edges().end());
  for (auto& x : e) x.weight *= factor;
  return Graph::from_unlabeled(g.node_count(), e);
}

}  // namespace

TEST(EdgeBudget, ClassicalEdgeCounts) {
  EXPECT_EQ(edge_budget(78, 0.3), 23u);
  EXPECT_EQ(edge_budget(336, 0.3), 101u);
  EXPECT_EQ(edge_budget(243, 0.3), 73u);
  EXPECT_EQ(edge_budget(254, 0.3), 76u);
  EXPECT_EQ(edge_budget(1255, 0.3), 376u);
  EXPECT_EQ(edge_budget(16313, 0.3), 4894u);
  EXPECT_EQ(edge_budget(47594, 0.3), 14278u);
}

TEST(EdgeBudget, HalvesRoundToEven) {
  EXPECT_EQ(edge_budget(5, 0.5), 2u);
  EXPECT_EQ(edge_budget(7, 0.5), 4u);
  EXPECT_EQ(edge_budget(5, 0.3), 2u);  // 1.5
  EXPECT_EQ(edge_budget(15, 0.3), 4u);  // 4.5
  EXPECT_EQ(edge_budget(25, 0.3), 8u);  // 7.5
  EXPECT_EQ(edge_budget(1, 0.5), 0u);
}

TEST(EdgeBudget, Extremes) {
  EXPECT_EQ(edge_budget(10, 0.0), 0u);
  EXPECT_EQ(edge_budget(10, 1.0), 10u);
  EXPECT_EQ(edge_budget(0, 0.7), 0u);
  EXPECT_THROW(edge_budget(10, -0.1), ValidationError);
  EXPECT_THROW(edge_budget(10, 1.5), ValidationError);
  EXPECT_THROW(edge_budget(10, std::nan("")), ValidationError);
}

TEST(RankEdges, TiebreakOrder) {
  const Graph g = Graph::from_unlabeled(4, {{0, 1, 2}, {0, 2, 5}, {1, 2, 5}, {2, 3, 1}});
  const std::vector<EdgeScore> scores{{0, 0.5}, {1, 0.5}, {2, 0.5}, {3, 0.1}};
  EXPECT_EQ(rank_edges(g, scores), (std::vector<EdgeId>{3, 1, 2, 0}));
}

TEST(GlobalThreshold, KeepsHeaviest) {
  const Graph g = Graph::from_unlabeled(4, {{0, 1, 5}, {1, 2, 3}, {2, 3, 1}});
  const Backbone b = global_threshold(g, 1.0 / 3.0);
  ASSERT_EQ(b.graph.edge_count(), 1u);
  EXPECT_EQ(b.graph.edge(0).weight, 5.0);
  EXPECT_EQ(b.graph.node_count(), 2u);
  EXPECT_EQ(b.provenance.method, "global_threshold");
  EXPECT_EQ(b.provenance.tiebreak, kTiebreakVersion);
}

TEST(GlobalThreshold, KarateAtThirtyPercent) {
  const Backbone b = global_threshold(fx::karate(), 0.3);
  EXPECT_EQ(b.graph.edge_count(), 23u);
  EXPECT_GE(b.graph.node_count(), 17u);
  EXPECT_LE(b.graph.node_count(), 21u);
  EXPECT_EQ(b.provenance.classical_budget, 23u);
}

TEST(GlobalThreshold, FullFractionIsIdentity) {
  const Graph g = fx::lesmis();
  const Backbone b = global_threshold(g, 1.0);
  EXPECT_EQ(edge_label_pairs(b.graph), edge_label_pairs(g));
  EXPECT_TRUE(global_threshold(g, 0.0).graph.empty());
}

TEST(GlobalThreshold, MonotoneTransformInvariance) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const Graph g = fx::random_graph(rng, 12, 0.4, 6);
    std::vector<Edge> e(g.edges().begin(), g.edges().end());
    for (auto& x : e) x.weight = std::log1p(x.weight * x.weight * x.weight);
    const Graph h = Graph::from_unlabeled(g.node_count(), e);
    for (double f : {0.2, 0.5, 0.8}) EXPECT_EQ(ids_of(global_threshold(g, f)), ids_of(global_threshold(h, f)));
  }
}

TEST(GlobalThreshold, MaximisesPreservedWeight) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 25; ++t) {
    const Graph g = fx::random_graph(rng, 7, 0.55, 9);
    const std::size_t m = g.edge_count();
    if (m == 0 || m > 12) continue;
    for (double f : {0.25, 0.5, 0.75}) {
      const std::size_t k = edge_budget(m, f);
      double best = 0;
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (std::size_t(__builtin_popcount(mask)) != k) continue;
        double w = 0;
        for (std::size_t i = 0; i < m; ++i)
          if (mask >> i & 1) w += g.edge(i).weight;
        best = std::max(best, w);
      }
      EXPECT_DOUBLE_EQ(global_threshold(g, f).graph.total_weight(), best);
    }
  }
}

TEST(Disparity, SideScoreFormula) {
  EXPECT_DOUBLE_EQ(disparity_side_score(2.0, 4.0, 3), 0.25);
  EXPECT_DOUBLE_EQ(disparity_side_score(3.0, 3.0, 1), 1.0);
}

TEST(Disparity, LeafEdgeUsesHubSide) {
  // hub 0 with four leaves
  const Graph g = Graph::from_unlabeled(5, {{0, 1, 4}, {0, 2, 2}, {0, 3, 1}, {0, 4, 1}});
  const auto s = disparity_scores(g);
  EXPECT_DOUBLE_EQ(s[0].score, std::pow(1.0 - 0.5, 3));
  EXPECT_DOUBLE_EQ(s[2].score, std::pow(1.0 - 0.125, 3));
}

TEST(Disparity, IsolatedPairScoresOne) {
  const Graph g = Graph::from_unlabeled(2, {{0, 1, 3}});
  EXPECT_DOUBLE_EQ(disparity_scores(g)[0].score, 1.0);
}

TEST(Disparity, SideScoresMatchNullModelIntegral) {
  std::mt19937_64 rng(31337);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    const Graph g = fx::random_real_graph(rng, 3 + t % 8, 0.6);
    const auto scores = disparity_scores(g);
    ASSERT_EQ(scores.size(), g.edge_count());
    for (const auto& s : scores) {
      const Edge& e = g.edge(s.edge);
      const double a = tail_integral(e.weight / g.strength(e.u), g.degree(e.u));
      const double b = tail_integral(e.weight / g.strength(e.v), g.degree(e.v));
      EXPECT_NEAR(disparity_side_score(e.weight, g.strength(e.u), g.degree(e.u)), a, 1e-9);
      EXPECT_NEAR(disparity_side_score(e.weight, g.strength(e.v), g.degree(e.v)), b, 1e-9);
      EXPECT_NEAR(s.score, std::min(a, b), 1e-9);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Disparity, KarateAtThirtyPercent) {
  const Backbone b = disparity_filter(fx::karate(), Fraction{0.3});
  EXPECT_EQ(b.graph.edge_count(), 23u);
  EXPECT_GE(b.graph.node_count(), 19u);
  EXPECT_LE(b.graph.node_count(), 23u);
}

TEST(Disparity, FullFractionIsIdentity) {
  const Graph g = fx::karate();
  EXPECT_EQ(edge_label_pairs(disparity_filter(g, Fraction{1.0}).graph), edge_label_pairs(g));
}

TEST(Disparity, EqualWeightStarIsEmptyAtFivePercent) {
  for (std::size_t k = 2; k <= 50; ++k) {
    EXPECT_GT(std::pow(1.0 - 1.0 / double(k), double(k) - 1.0), 0.05);
    std::vector<Edge> e;
    for (NodeId i = 1; i <= k; ++i) e.push_back({0, i, 1.0});
    const Graph star = Graph::from_unlabeled(k + 1, e);
    const Backbone b = disparity_filter(star, Alpha{0.05});
    EXPECT_TRUE(b.graph.empty()) << "k=" << k;
    EXPECT_EQ(b.provenance.alpha, 0.05);
  }
}

TEST(Disparity, AlphaModeKeepsScoresBelowAlpha) {
  std::mt19937_64 rng(2);
  const Graph g = fx::random_real_graph(rng, 20, 0.3);
  const auto scores = disparity_scores(g);
  for (double alpha : {0.01, 0.1, 0.5, 1.0}) {
    std::vector<EdgeId> expected;
    for (const auto& s : scores)
      if (s.score < alpha) expected.push_back(s.edge);
    EXPECT_EQ(ids_of(disparity_filter(g, Alpha{alpha})), expected);
  }
  EXPECT_THROW(disparity_filter(g, Alpha{1.5}), ValidationError);
}

TEST(Disparity, ScaleInvariance) {
  std::mt19937_64 rng(1000);
  for (int t = 0; t < 50; ++t) {
    const Graph g = fx::random_real_graph(rng, 4 + t % 7, 0.5);
    const Graph h = rescaled(g, 1000.0);
    for (double f : {0.1, 0.3, 0.6, 0.9})
      EXPECT_EQ(ids_of(disparity_filter(g, Fraction{f})), ids_of(disparity_filter(h, Fraction{f})));
    EXPECT_EQ(ids_of(disparity_filter(g, Alpha{0.3})), ids_of(disparity_filter(h, Alpha{0.3})));
  }
}

TEST(Filters, NestingAndBudgetExactness) {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 20; ++t) {
    const Graph g = fx::random_graph(rng, 25, 0.2, 4);
    std::vector<EdgeId> prev_gt, prev_df;
    for (int i = 1; i <= 9; ++i) {
      const double f = i / 10.0;
      const auto gt = ids_of(global_threshold(g, f));
      const auto df = ids_of(disparity_filter(g, Fraction{f}));
      EXPECT_EQ(gt.size(), edge_budget(g.edge_count(), f));
      EXPECT_EQ(df.size(), edge_budget(g.edge_count(), f));
      EXPECT_TRUE(subset(prev_gt, gt));
      EXPECT_TRUE(subset(prev_df, df));
      prev_gt = gt;
      prev_df = df;
    }
  }
}

TEST(Filters, WeightsArePreservedBitExactly) {
  std::mt19937_64 rng(9);
  const Graph g = fx::random_real_graph(rng, 30, 0.2);
  for (const Backbone& b : {global_threshold(g, 0.4), disparity_filter(g, Fraction{0.4})}) {
    for (EdgeId i = 0; i < b.graph.edge_count(); ++i)
      EXPECT_EQ(b.graph.edge(i).weight, g.edge(b.parent_edges[i]).weight);
  }
}
