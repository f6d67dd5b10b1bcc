#include "lsp/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"

namespace lsp {

std::vector<std::vector<std::size_t>> khop_sizes_multi(const Graph& g, std::span<const std::size_t> depths,
                                                       unsigned threads) {
  for (std::size_t k : depths) {
    if (k < 1) throw usage_error("bad-depth", "neighborhood depth must be >= 1");
  }
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::size_t>> out(depths.size(), std::vector<std::size_t>(n, 0));
  if (depths.empty() || n == 0) return out;
  const std::size_t max_depth = *std::max_element(depths.begin(), depths.end());
  const AdjacencyView adj(g);

  detail::parallel_for(n, std::max(1u, threads), [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t current = 0;
    std::vector<NodeId> frontier;
    std::vector<NodeId> next;
    std::vector<std::size_t> reached(max_depth + 1, 0);  // reached[h]: nodes at distance <= h, excluding source
    for (std::size_t src = begin; src < end; ++src) {
      ++current;
      stamp[src] = current;
      frontier.assign(1, static_cast<NodeId>(src));
      std::size_t total = 0;
      std::size_t h = 0;
      for (h = 1; h <= max_depth && !frontier.empty(); ++h) {
        next.clear();
        for (NodeId x : frontier) {
          for (NodeId y : adj.neighbors(x)) {
            if (stamp[y] != current) {
              stamp[y] = current;
              next.push_back(y);
            }
          }
        }
        total += next.size();
        reached[h] = total;
        frontier.swap(next);
      }
      for (; h <= max_depth; ++h) reached[h] = total;
      for (std::size_t j = 0; j < depths.size(); ++j) out[j][src] = reached[depths[j]];
    }
  });
  return out;
}

std::vector<std::size_t> khop_sizes(const Graph& g, std::size_t k, unsigned threads) {
  const std::size_t depth[] = {k};
  return std::move(khop_sizes_multi(g, depth, threads).front());
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double mu = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(values.size());
}

double population_variance(std::span<const std::size_t> values) {
  std::vector<double> d(values.begin(), values.end());
  return population_variance(d);
}

NeighborhoodStats neighborhood_stats(const Graph& g, std::span<const std::size_t> depths, double kept_fraction,
                                     unsigned threads) {
  NeighborhoodStats s;
  s.depths.assign(depths.begin(), depths.end());
  s.sizes = khop_sizes_multi(g, depths, threads);
  for (const auto& row : s.sizes) s.variance.push_back(population_variance(row));
  s.kept_fraction = kept_fraction;
  return s;
}

namespace {

// Kept edge set for every prefix 1..K of the functions in `r`.
std::vector<std::vector<EdgeId>> prefix_kept_sets(const Graph& g, const PruneResult& r) {
  std::vector<std::vector<EdgeId>> sets;
  std::vector<char> keep(g.num_edges(), 0);
  for (std::size_t k = 0; k < r.functions; ++k) {
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      const EdgeId e = r.selected_edges(u)[k];
      if (e != kNoEdge) keep[e] = 1;
    }
    std::vector<EdgeId> kept;
    for (std::size_t e = 0; e < keep.size(); ++e) {
      if (keep[e]) kept.push_back(static_cast<EdgeId>(e));
    }
    sets.push_back(std::move(kept));
  }
  return sets;
}

}  // namespace

std::vector<VarianceCurvePoint> neighborhood_variance_curve(const Graph& g, std::span<const std::size_t> depths,
                                                            std::span<const double> fractions,
                                                            const CurvePruner& pruner, std::size_t trials,
                                                            std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw usage_error("bad-config", "trials must be >= 1");
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw usage_error("bad-config", "kept fractions must lie in (0, 1]");
  }
  const double total_edges = static_cast<double>(g.num_edges());
  const auto fraction_of = [&](std::size_t kept) {
    return g.num_edges() == 0 ? 1.0 : static_cast<double>(kept) / total_edges;
  };

  std::vector<VarianceCurvePoint> out;
  const NeighborhoodStats full = neighborhood_stats(g, depths, 1.0, threads);

  // LSP prefixes are independent of the target fraction; compute them once per trial.
  std::vector<std::vector<std::vector<EdgeId>>> lsp_prefixes;
  if (pruner.method == CurvePruner::Method::kLsp) {
    const EdgeAttrTable table = prepare_edge_attrs(g, pruner.attrs);
    for (std::size_t t = 0; t < trials; ++t) {
      LshFamilyConfig cfg = pruner.family;
      cfg.k = std::max<std::size_t>(1, pruner.max_functions);
      cfg.d = std::max<std::size_t>(1, table.dim());
      cfg.master_seed = mix_seed(seed, t);
      PruneOptions opts;
      opts.threads = threads;
      lsp_prefixes.push_back(prefix_kept_sets(g, lsp_prune(g, table, LshFamily(cfg), opts)));
    }
  }

  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    const double f = fractions[fi];
    std::vector<double> variance(depths.size(), 0.0);
    double kept_sum = 0.0;
    std::size_t functions = 0;
    if (f >= 1.0) {
      variance = full.variance;
      kept_sum = static_cast<double>(trials);
    } else {
      for (std::size_t t = 0; t < trials; ++t) {
        PruneResult r;
        if (pruner.method == CurvePruner::Method::kRandom) {
          RandomPruneConfig rc;
          rc.keep_probability = f;
          rc.seed = mix_seed(seed, t);
          rc.stream = fi;
          r = random_prune(g, rc);
        } else {
          const auto& sets = lsp_prefixes[t];
          std::size_t best = 0;
          for (std::size_t k = 1; k < sets.size(); ++k) {
            if (std::fabs(fraction_of(sets[k].size()) - f) < std::fabs(fraction_of(sets[best].size()) - f)) best = k;
          }
          r.kept = sets[best];
          functions += best + 1;
        }
        const NeighborhoodStats s = neighborhood_stats(g.with_edges(r.kept), depths, 1.0, threads);
        for (std::size_t j = 0; j < depths.size(); ++j) variance[j] += s.variance[j];
        kept_sum += fraction_of(r.kept.size());
      }
      for (double& v : variance) v /= static_cast<double>(trials);
    }
    for (std::size_t j = 0; j < depths.size(); ++j) {
      VarianceCurvePoint p;
      p.target_fraction = f;
      p.kept_fraction = kept_sum / static_cast<double>(trials);
      p.depth = depths[j];
      p.variance = variance[j];
      p.functions = functions == 0 ? 0 : (functions + trials / 2) / trials;
      out.push_back(p);
    }
  }
  return out;
}

VarianceScaling variance_scaling_check(std::span<const double> degrees, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw usage_error("bad-config", "p must lie in [0, 1]");
  std::vector<double> scaled(degrees.begin(), degrees.end());
  for (double& d : scaled) d *= p;
  return {population_variance(scaled), p * p * population_variance(degrees)};
}

double bernoulli_degree_variance(std::span<const double> degrees, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw usage_error("bad-config", "p must lie in [0, 1]");
  return p * p * population_variance(degrees) + p * (1.0 - p) * mean(degrees);
}

double jaccard(const AdjacencyView& adj, NodeId u, NodeId v) {
  const auto a = adj.neighbors(u);
  const auto b = adj.neighbors(v);
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::vector<JaccardPair> jaccard_locality(const Graph& g, const Graph& pruned,
                                          std::span<const std::pair<NodeId, NodeId>> pairs) {
  if (g.num_nodes() != pruned.num_nodes()) {
    throw data_error("node-set-mismatch", "pruned graph has " + std::to_string(pruned.num_nodes()) +
                                              " nodes, original has " + std::to_string(g.num_nodes()));
  }
  const AdjacencyView before(g);
  const AdjacencyView after(pruned);
  std::vector<JaccardPair> out;
  out.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    if (u >= g.num_nodes() || v >= g.num_nodes()) {
      throw data_error("out-of-range-index",
                       "pair (" + std::to_string(u) + ", " + std::to_string(v) + ") with " +
                           std::to_string(g.num_nodes()) + " nodes");
    }
    out.push_back({u, v, jaccard(before, u, v), jaccard(after, u, v)});
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> pairs_with_common_neighbor(const Graph& g) {
  const AdjacencyView adj(g);
  std::vector<std::pair<NodeId, NodeId>> out;
  std::vector<NodeId> partners;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    partners.clear();
    for (NodeId w : adj.neighbors(u)) {
      for (NodeId v : adj.neighbors(w)) {
        if (v > u) partners.push_back(v);
      }
    }
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (NodeId v : partners) out.emplace_back(u, v);
  }
  return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw usage_error("bad-input", "spearman needs two equal series of length >= 2");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace lsp
