#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lsp/graph.hpp"
#include "lsp/pruner.hpp"

namespace lsp {

/// |N^{k,v}|: nodes other than v within k hops (self-loops ignored).
std::vector<std::size_t> khop_sizes(const Graph& g, std::size_t k, unsigned threads = 1);

/// One bounded BFS per node to the largest depth; row j holds the sizes for
/// depths[j].
std::vector<std::vector<std::size_t>> khop_sizes_multi(const Graph& g, std::span<const std::size_t> depths,
                                                       unsigned threads = 1);

/// Population mean and variance.
double mean(std::span<const double> values);
double population_variance(std::span<const double> values);
double population_variance(std::span<const std::size_t> values);

struct NeighborhoodStats {
  std::vector<std::size_t> depths;
  std::vector<std::vector<std::size_t>> sizes;  // per depth, per node
  std::vector<double> variance;                 // per depth
  double kept_fraction = 1.0;
};

NeighborhoodStats neighborhood_stats(const Graph& g, std::span<const std::size_t> depths, double kept_fraction = 1.0,
                                     unsigned threads = 1);

/// How the variance curve prunes at a target kept fraction. Random pruning
/// uses p = fraction. LSP pruning cannot hit arbitrary fractions; it uses the
/// number of functions k whose kept fraction is closest to the target.
struct CurvePruner {
  enum class Method { kRandom, kLsp } method = Method::kRandom;
  LshFamilyConfig family;  // lsp only; d is filled from the attribute table
  AttrOptions attrs;
  std::size_t max_functions = 64;
};

struct VarianceCurvePoint {
  double target_fraction = 1.0;
  double kept_fraction = 1.0;  // mean over trials
  std::size_t depth = 1;
  double variance = 0.0;  // mean over trials
  std::size_t functions = 0;  // lsp: chosen k for this fraction
};

/// For each fraction and trial, prune, measure Var(|N^{k,.}|) per depth and
/// average over trials. Fraction 1 is the unpruned graph. Trial t uses seed
/// stream mix_seed(seed, t).
std::vector<VarianceCurvePoint> neighborhood_variance_curve(const Graph& g, std::span<const std::size_t> depths,
                                                            std::span<const double> fractions,
                                                            const CurvePruner& pruner, std::size_t trials,
                                                            std::uint64_t seed, unsigned threads = 1);

struct VarianceScaling {
  double lhs = 0.0;  // Var(p * d)
  double rhs = 0.0;  // p^2 * Var(d)
};

/// Both sides of the deterministic k = 1 scaling identity.
VarianceScaling variance_scaling_check(std::span<const double> degrees, double p);

/// Expected degree variance after independent per-edge keeping with
/// probability p: p^2 Var(d) + p (1 - p) E[d]. Exceeds the deterministic
/// scaling whenever 0 < p < 1 and E[d] > 0.
double bernoulli_degree_variance(std::span<const double> degrees, double p);

struct JaccardPair {
  NodeId u = 0;
  NodeId v = 0;
  double before = 0.0;
  double after = 0.0;
};

/// |N_u ∩ N_v| / |N_u ∪ N_v| on both graphs; two empty neighborhoods give 1.
double jaccard(const AdjacencyView& adj, NodeId u, NodeId v);
std::vector<JaccardPair> jaccard_locality(const Graph& g, const Graph& pruned,
                                          std::span<const std::pair<NodeId, NodeId>> pairs);

/// All pairs u < v sharing at least one neighbor in g.
std::vector<std::pair<NodeId, NodeId>> pairs_with_common_neighbor(const Graph& g);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace lsp
