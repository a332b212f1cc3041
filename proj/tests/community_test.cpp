#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <sstream>

#include "spine/community.hpp"
#include "support.hpp"

using namespace spine;
using spine::fx::random_assignment;
using spine::fx::random_graph;

namespace {

// Eq. straight from the definition: (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j).
double modularity_by_pairs(const Graph& g, const Partition& p) {
  const std::size_t n = g.node_count();
  const double m2 = 2 * g.total_weight();
  double q = 0;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j) {
      if (p[i] != p[j]) continue;
      const auto e = g.find_edge(i, j);
      const double a = (i != j && e) ? g.edge(*e).weight : 0.0;
      q += a - g.strength(i) * g.strength(j) / m2;
    }
  return q / m2;
}

// Every set partition of {0..n-1} as restricted growth strings.
void for_each_set_partition(std::size_t n, const std::function<void(std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max) {
    if (i == n) {
      f(a);
      return;
    }
    for (std::size_t c = 0; c <= max + 1; ++c) {
      a[i] = c;
      rec(i + 1, std::max(max, c));
    }
  };
  a[0] = 0;
  rec(1, 0);
}

Graph barbell() {
  std::vector<Edge> e;
  fx::clique(4, 0, &e);
  fx::clique(4, 4, &e);
  e.push_back({3, 4, 1.0});
  return Graph::from_unlabeled(8, e);
}

Graph two_cliques() {
  std::vector<Edge> e;
  fx::clique(4, 0, &e);
  fx::clique(4, 4, &e);
  return Graph::from_unlabeled(8, e);
}

}  // namespace

TEST(Partition, DenseRenumbering) {
  const std::vector<std::size_t> raw{7, 3, 7, 9};
  const Partition p = Partition::from_assignment(raw);
  EXPECT_EQ(p.community_count(), 3u);
  EXPECT_EQ(p[0], 0u);
  EXPECT_EQ(p[1], 1u);
  EXPECT_EQ(p[2], 0u);
  EXPECT_EQ(p[3], 2u);
}

TEST(Modularity, SingleCommunityIsZero) {
  EXPECT_NEAR(modularity(fx::karate(), Partition::single(34)), 0.0, 1e-15);
}

TEST(Modularity, TwoEqualCliquesIsHalf) {
  const std::vector<std::size_t> halves{0, 0, 0, 0, 1, 1, 1, 1};
  EXPECT_NEAR(modularity(two_cliques(), Partition::from_assignment(halves)), 0.5, 1e-15);
}

TEST(Modularity, ZeroWeightThrows) {
  EXPECT_THROW(modularity(Graph::from_unlabeled(2, {}), Partition::single(2)), ValidationError);
}

TEST(Modularity, RejectsMismatchedPartition) {
  EXPECT_THROW(modularity(fx::triangle(), Partition::single(2)), ValidationError);
}

TEST(Modularity, MatchesPairwiseDefinitionAndBounds) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    const Graph g = random_graph(rng, 4 + t % 10, 0.4);
    if (g.edge_count() == 0) continue;
    const Partition p = Partition::from_assignment(random_assignment(rng, g.node_count(), 1 + t % 5));
    const double q = modularity(g, p);
    EXPECT_NEAR(q, modularity_by_pairs(g, p), 1e-12);
    EXPECT_GE(q, -0.5);
    EXPECT_LE(q, 1.0);
  }
}

TEST(Louvain, DisjointCliques) {
  const Partition p = louvain(two_cliques(), 0);
  EXPECT_EQ(p.community_count(), 2u);
  for (NodeId i = 0; i < 8; ++i) EXPECT_EQ(p[i], p[i < 4 ? 0 : 4]);
  EXPECT_NE(p[0], p[4]);
}

TEST(Louvain, BarbellMatchesExhaustiveOptimum) {
  const Graph g = barbell();
  double best = -1;
  std::vector<std::size_t> arg;
  for_each_set_partition(8, [&](std::vector<std::size_t>& a) {
    const double q = modularity(g, Partition::from_assignment(a));
    if (q > best + 1e-12) best = q, arg = a;
  });
  const Partition optimum = Partition::from_assignment(arg);
  EXPECT_EQ(optimum, Partition::from_assignment(std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 1, 1}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Partition p = louvain(g, seed);
    EXPECT_EQ(p, optimum) << "seed " << seed;
    EXPECT_NEAR(modularity(g, p), best, 1e-12);
  }
}

TEST(Louvain, NoEdgesGivesSingletons) {
  const Partition p = louvain(Graph::from_unlabeled(4, {}), 1);
  EXPECT_EQ(p, Partition::singletons(4));
}

TEST(Louvain, ReproducibleForFixedSeed) {
  const Graph g = fx::lesmis();
  for (std::uint64_t seed : {0u, 5u, 123u}) EXPECT_EQ(louvain(g, seed), louvain(g, seed));
}

TEST(Louvain, LevelsNeverDecreaseModularity) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Graph g = fx::random_real_graph(rng, 40, 0.1);
    if (g.edge_count() == 0) continue;
    std::vector<LouvainLevel> levels;
    LouvainOptions opts;
    opts.on_level = [&](const LouvainLevel& l) { levels.push_back(l); };
    const Partition p = louvain(g, t, opts);
    ASSERT_FALSE(levels.empty());
    double prev = modularity(g, Partition::singletons(g.node_count()));
    for (const auto& l : levels) {
      EXPECT_GE(l.modularity, prev - 1e-12);
      prev = l.modularity;
    }
    EXPECT_NEAR(levels.back().modularity, modularity(g, p), 1e-12);
  }
}

TEST(Louvain, KarateBestOfTen) {
  const Graph g = fx::karate();
  const DetectedPartition d = detect_communities(g);
  EXPECT_NEAR(d.modularity, 0.444, 0.02);
  EXPECT_LT(d.seed, 10u);
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_LE(modularity(g, louvain(g, s)), d.modularity);
}

TEST(Louvain, LesMiserablesBestOfTen) {
  EXPECT_GE(detect_communities(fx::lesmis()).modularity, 0.54);
}

TEST(Louvain, FixedSeedChoice) {
  const Graph g = fx::karate();
  const DetectedPartition d = detect_communities(g, SeedChoice::exactly(4));
  EXPECT_EQ(d.seed, 4u);
  EXPECT_EQ(d.partition, louvain(g, 4));
}

TEST(Participation, SimpleCases) {
  // 0 is linked to 1 (same community) and 2 (other community); 1 only to 0.
  const Graph g = fx::path3();
  const Partition p = Partition::from_assignment(std::vector<std::size_t>{0, 0, 1});
  const auto pc = participation_coefficients(g, p);
  EXPECT_DOUBLE_EQ(pc[0], 0.0);
  EXPECT_DOUBLE_EQ(pc[1], 0.5);
  EXPECT_DOUBLE_EQ(pc[2], 0.0);

  const Graph iso = Graph::from_unlabeled(2, {});
  EXPECT_EQ(participation_coefficients(iso, Partition::singletons(2)), (std::vector<double>{0, 0}));
}

TEST(Participation, BoundedByCommunityCount) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_graph(rng, 3 + t % 9, 0.5);
    const std::size_t c = 1 + t % 4;
    const Partition p = Partition::from_assignment(random_assignment(rng, g.node_count(), c));
    const double bound = 1.0 - 1.0 / double(p.community_count());
    for (NodeId i = 0; i < g.node_count(); ++i) {
      const double v = participation_coefficients(g, p)[i];
      // direct count
      std::vector<double> kappa(p.community_count(), 0);
      for (const auto& nb : g.neighbors(i)) kappa[p[nb.node]] += 1;
      double s = 0;
      for (double x : kappa) s += g.degree(i) ? (x / g.degree(i)) * (x / g.degree(i)) : 0;
      EXPECT_NEAR(v, g.degree(i) ? 1 - s : 0.0, 1e-12);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, bound + 1e-12);
    }
  }
}

TEST(Connectivity, IdentityHoldsForAnyPartition) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Graph g = fx::random_real_graph(rng, 5 + t % 15, 0.3);
    const Partition p = Partition::from_assignment(random_assignment(rng, g.node_count(), 1 + t % 6));
    const auto c = community_connectivity(g, p);
    EXPECT_NEAR(c.inter + c.intra, g.total_weight(), 1e-9 * std::max(1.0, g.total_weight()));
  }
}

TEST(Connectivity, ExtremePartitions) {
  const Graph g = fx::karate();
  const auto one = community_connectivity(g, Partition::single(34));
  EXPECT_EQ(one.inter, 0.0);
  EXPECT_EQ(one.intra, 231.0);
  const auto each = community_connectivity(g, Partition::singletons(34));
  EXPECT_EQ(each.inter, 231.0);
  EXPECT_EQ(each.intra, 0.0);
}

TEST(Connectivity, KarateFourCommunitySplit) {
  // The Q ~ 0.4439 four-way split of the weighted karate graph.
  const Graph g = fx::karate();
  const Partition p = louvain(g, 3);
  EXPECT_NEAR(modularity(g, p), 0.444, 0.001);
  const auto c = community_connectivity(g, p);
  EXPECT_EQ(c.inter, 51.0);
  EXPECT_EQ(c.intra, 180.0);
}

TEST(Connectivity, RestrictPartitionByLabel) {
  const Graph g = Graph::from_edges({"a", "b", "c", "d"}, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  const Partition p = Partition::from_assignment(std::vector<std::size_t>{0, 0, 1, 1});
  const Graph sub = Graph::from_edges({"c", "b"}, {{0, 1, 1}});
  const Partition r = restrict_partition(g, p, sub);
  EXPECT_EQ(r.community_count(), 2u);
  EXPECT_EQ(community_connectivity(sub, r).inter, 1.0);
  const Graph alien = Graph::from_edges({"c", "zz"}, {{0, 1, 1}});
  EXPECT_THROW(restrict_partition(g, p, alien), ContainmentError);
}

TEST(PartitionTsv, RoundTrip) {
  const Graph g = fx::karate();
  const Partition p = louvain(g, 1);
  std::stringstream buf;
  write_partition_tsv(buf, g, p);
  EXPECT_EQ(read_partition_tsv(buf, g), p);
}

TEST(PartitionTsv, Errors) {
  const Graph g = fx::path3();
  std::istringstream missing("0\t0\n1\t0\n");
  EXPECT_THROW(read_partition_tsv(missing, g), ValidationError);
  std::istringstream unknown("9\t0\n");
  EXPECT_THROW(read_partition_tsv(unknown, g), ParseError);
  std::istringstream bad("0 0\n");
  EXPECT_THROW(read_partition_tsv(bad, g), ParseError);
}

TEST(Histogram, BinsOverUnitInterval) {
  const std::vector<double> v{0.0, 0.049, 0.05, 0.5, 0.999, 1.0};
  const auto h = histogram01<20>(v);
  EXPECT_EQ(h[0], 2u);
  EXPECT_EQ(h[1], 1u);
  EXPECT_EQ(h[10], 1u);
  EXPECT_EQ(h[19], 2u);
}
