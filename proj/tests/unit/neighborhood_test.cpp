#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <set>
#include <vector>

#include "fixtures.hpp"

namespace lsp {
namespace {

using testing::brute_khop;
using testing::make_graph;
using testing::random_graph;

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  return make_graph(n, pairs);
}

Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < n; ++a) pairs.emplace_back(a, static_cast<NodeId>((a + 1) % n));
  return make_graph(n, pairs, Matrix(n, 2, 1.0));
}

TEST(KHop, PathDepthTwo) {
  const Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(khop_sizes(g, 2)[0], 2u);
  EXPECT_EQ(khop_sizes(g, 2), (std::vector<std::size_t>{2, 3, 3, 2}));
}

TEST(KHop, CompleteGraph) {
  const Graph g = complete_graph(7);
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t s : khop_sizes(g, k)) EXPECT_EQ(s, 6u);
}

TEST(KHop, SelfLoopsIgnored) {
  const Graph g = make_graph(3, {{0, 1}}, {}, {}, {0, 2});
  EXPECT_EQ(khop_sizes(g, 3), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(KHop, TwoBlockScenarioMatchesAllPairsOracle) {
  const auto s = testing::twin_scenario(1, 4);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(khop_sizes(s.graph, k), brute_khop(s.graph, k));
}

TEST(KHop, RandomGraphsMatchAllPairsOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 5 + seed % 46;
    const Graph g = random_graph(n, 1.5 / static_cast<double>(n) + 0.01 * static_cast<double>(seed % 5), seed, 0);
    const std::vector<std::size_t> depths = {1, 2, 3, 4, 6};
    const auto multi = khop_sizes_multi(g, depths, 1 + seed % 3);
    for (std::size_t j = 0; j < depths.size(); ++j) {
      const auto expected = brute_khop(g, depths[j]);
      EXPECT_EQ(multi[j], expected) << "seed " << seed << " depth " << depths[j];
      EXPECT_EQ(khop_sizes(g, depths[j]), expected);
    }
  }
}

TEST(KHop, DepthOneIsDegreeAndMonotone) {
  const Graph g = random_graph(80, 0.04, 9, 0);
  const std::vector<std::size_t> depths = {1, 2, 3, 4, 5};
  const NeighborhoodStats st = neighborhood_stats(g, depths);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    EXPECT_EQ(st.sizes[0][u], g.degree(u));
    for (std::size_t j = 1; j < depths.size(); ++j) {
      EXPECT_GE(st.sizes[j][u], st.sizes[j - 1][u]);
      EXPECT_LE(st.sizes[j][u], g.num_nodes() - 1);
    }
  }
  for (std::size_t j = 0; j < depths.size(); ++j) EXPECT_DOUBLE_EQ(st.variance[j], population_variance(st.sizes[j]));
}

TEST(Variance, Population) {
  const std::vector<double> v = {1, 3};
  EXPECT_DOUBLE_EQ(population_variance(v), 1.0);
  EXPECT_DOUBLE_EQ(mean(v), 2.0);
  const std::vector<std::size_t> s = {2, 2, 2};
  EXPECT_EQ(population_variance(s), 0.0);
}

TEST(VarianceScaling, ConstantDegrees) {
  const std::vector<double> d = {2, 2, 2};
  for (double p : {0.0, 0.3, 1.0}) {
    const auto r = variance_scaling_check(d, p);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 0.0);
  }
}

TEST(VarianceScaling, TwoValues) {
  const std::vector<double> d = {1, 3};
  const auto r = variance_scaling_check(d, 0.5);
  EXPECT_DOUBLE_EQ(r.lhs, 0.25);
  EXPECT_DOUBLE_EQ(r.rhs, 0.25);
}

TEST(VarianceScaling, RandomSequences) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> deg(0, 200);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> d(1 + static_cast<std::size_t>(t) * 3);
    for (double& x : d) x = deg(rng);
    const auto r = variance_scaling_check(d, 0.37);
    EXPECT_LE(std::abs(r.lhs - r.rhs), 1e-12 * std::max(1.0, std::abs(r.rhs)));
  }
}

TEST(VarianceScaling, BernoulliExceedsDeterministic) {
  const std::vector<double> d = {1, 2, 3, 4, 10};
  const double p = 0.4;
  const double det = variance_scaling_check(d, p).rhs;
  const double expected = det + p * (1 - p) * 4.0;
  EXPECT_DOUBLE_EQ(bernoulli_degree_variance(d, p), expected);
  EXPECT_GT(bernoulli_degree_variance(d, p), det);
  EXPECT_DOUBLE_EQ(bernoulli_degree_variance(d, 1.0), variance_scaling_check(d, 1.0).rhs);
}

// Star centres share no edges, so their pruned degrees are independent
// binomials.
TEST(VarianceScaling, BernoulliFormulaMatchesMonteCarloOnDisjointEdges) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  NodeId next = 0;
  std::vector<NodeId> centers;
  for (int s = 0; s < 200; ++s) {
    const NodeId c = next++;
    centers.push_back(c);
    for (int j = 0; j <= s % 5; ++j) pairs.emplace_back(c, next++);
  }
  const Graph g = make_graph(next, pairs);
  std::vector<double> deg;
  for (NodeId c : centers) deg.push_back(static_cast<double>(g.degree(c)));
  const double p = 0.6;
  double acc = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    const Graph h = pruned_graph(g, random_prune(g, {p, static_cast<std::uint64_t>(t)}));
    std::vector<double> dd;
    for (NodeId c : centers) dd.push_back(static_cast<double>(h.degree(c)));
    acc += population_variance(dd);
  }
  // The population variance of n independent draws loses one n-th of the
  // average per-node Bernoulli variance to the sample mean.
  const double n = static_cast<double>(centers.size());
  const double expected = bernoulli_degree_variance(deg, p) - p * (1 - p) * mean(deg) / n;
  EXPECT_NEAR(acc / trials, expected, 0.02 * expected);
}

TEST(Curve, FullFractionEqualsUnprunedGraph) {
  const Graph g = random_graph(120, 0.03, 4, 2);
  const std::vector<std::size_t> depths = {1, 2, 3};
  const std::vector<double> fractions = {0.5, 1.0};
  const NeighborhoodStats base = neighborhood_stats(g, depths);
  for (auto method : {CurvePruner::Method::kRandom, CurvePruner::Method::kLsp}) {
    CurvePruner pruner;
    pruner.method = method;
    pruner.max_functions = 8;
    const auto curve = neighborhood_variance_curve(g, depths, fractions, pruner, 3, 1);
    ASSERT_EQ(curve.size(), fractions.size() * depths.size());
    for (const auto& pt : curve) {
      if (pt.target_fraction != 1.0) continue;
      const std::size_t j = static_cast<std::size_t>(std::find(depths.begin(), depths.end(), pt.depth) - depths.begin());
      EXPECT_EQ(pt.variance, base.variance[j]);
      EXPECT_EQ(pt.kept_fraction, 1.0);
    }
  }
}

TEST(Curve, RegularGraphDepthOneHasZeroVariance) {
  const Graph g = cycle_graph(30);
  const std::vector<std::size_t> depths = {1};
  const std::vector<double> fractions = {1.0};
  const auto curve = neighborhood_variance_curve(g, depths, fractions, {}, 1, 0);
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve[0].variance, 0.0);
}

TEST(Curve, GeneratedGraphDeeperHopsVaryMore) {
  GeneratorConfig cfg;
  cfg.num_samples = 1;
  cfg.num_classes = 1;
  cfg.min_nodes = cfg.max_nodes = 500;
  cfg.connectivity_rate = 0.004;
  const Graph g = generate_dataset(cfg)[0].graph;
  const std::vector<std::size_t> depths = {1, 3};
  const NeighborhoodStats st = neighborhood_stats(g, depths);
  EXPECT_GT(st.variance[1], st.variance[0]);
}

TEST(Curve, LspKeptFractionTracksFunctionCount) {
  const Graph g = random_graph(200, 0.05, 2, 3);
  const std::vector<std::size_t> depths = {1};
  const std::vector<double> fractions = {0.2, 0.4, 0.6, 0.8};
  CurvePruner pruner;
  pruner.method = CurvePruner::Method::kLsp;
  pruner.max_functions = 32;
  const auto curve = neighborhood_variance_curve(g, depths, fractions, pruner, 2, 5);
  for (std::size_t j = 1; j < curve.size(); ++j) {
    EXPECT_GE(curve[j].functions, curve[j - 1].functions);
    EXPECT_GE(curve[j].kept_fraction, curve[j - 1].kept_fraction);
  }
  for (const auto& pt : curve) EXPECT_GE(pt.functions, 1u);
}

TEST(Jaccard, IdenticalAndDisjointNeighborhoods) {
  const Graph g = make_graph(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {4, 5}});
  const std::vector<std::pair<NodeId, NodeId>> pairs = {{0, 1}, {0, 4}, {2, 3}};
  const auto out = jaccard_locality(g, g, pairs);
  EXPECT_EQ(out[0].before, 1.0);
  EXPECT_EQ(out[1].before, 0.0);
  EXPECT_EQ(out[2].before, 1.0);
  EXPECT_EQ(out[0].after, out[0].before);
}

TEST(Jaccard, IsolatedPairIsOne) {
  const Graph g = make_graph(3, {{0, 1}});
  const AdjacencyView adj(g);
  EXPECT_EQ(jaccard(adj, 2, 2), 1.0);
  const Graph h = make_graph(4, {{0, 1}});
  EXPECT_EQ(jaccard(AdjacencyView(h), 2, 3), 1.0);
}

TEST(Jaccard, PartialOverlap) {
  const Graph g = make_graph(5, {{0, 2}, {0, 3}, {1, 3}, {1, 4}});
  EXPECT_DOUBLE_EQ(jaccard(AdjacencyView(g), 0, 1), 1.0 / 3.0);
}

// The two sides of the twin construction have disjoint neighbourhoods, so
// each right-side neighbour is mapped onto its left-side mirror first.
TEST(Jaccard, TwinSidesAgreeAfterLspPruning) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = testing::twin_scenario(seed, 4);
    const NodeId side = static_cast<NodeId>(s.graph.num_nodes() / 2);
    const EdgeAttrTable t = build_edge_attrs(s.graph, AttrMode::kNodeOnly);
    for (LshVariant v : {LshVariant::kThreshold, LshVariant::kProjection}) {
      LshFamilyConfig cfg;
      cfg.variant = v;
      cfg.k = 2;
      cfg.d = t.dim();
      cfg.master_seed = seed;
      const Graph pruned = pruned_graph(s.graph, lsp_prune(s.graph, t, LshFamily(cfg)));
      const AdjacencyView adj(pruned);
      for (auto [a, b] : s.twins) {
        std::set<NodeId> left(adj.neighbors(a).begin(), adj.neighbors(a).end());
        std::set<NodeId> right;
        for (NodeId x : adj.neighbors(b)) right.insert(x - side);
        std::set<NodeId> both;
        std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::inserter(both, both.end()));
        EXPECT_FALSE(left.empty());
        EXPECT_EQ(both.size(), left.size());
        EXPECT_EQ(both.size(), right.size());
      }
    }
  }
}

TEST(Spearman, Basics) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> up = {2, 4, 8, 16, 32};
  const std::vector<double> down = {5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(spearman(x, up), 1.0);
  EXPECT_DOUBLE_EQ(spearman(x, down), -1.0);
  const std::vector<double> tied = {1, 1, 2, 2, 3};
  EXPECT_GT(spearman(x, tied), 0.9);
  EXPECT_LT(spearman(x, tied), 1.0);
}

TEST(Pairs, CommonNeighbor) {
  const Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(pairs_with_common_neighbor(g), (std::vector<std::pair<NodeId, NodeId>>{{0, 2}, {1, 3}}));
}

}  // namespace
}  // namespace lsp
