#include <benchmark/benchmark.h>

#include <random>

#include "lsp/lsp.hpp"

namespace {

using namespace lsp;

// Circulant graph with degree 10 and q-dimensional standard-normal node
// attributes; |E| = 5n.
Graph circulant(std::size_t n, std::size_t q) {
  Graph::Parts parts;
  parts.num_nodes = n;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId j = 1; j <= 5; ++j) parts.edges.push_back({u, static_cast<NodeId>((u + j) % n)});
  parts.node_attrs = Matrix(n, q);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (double& v : parts.node_attrs.data()) v = normal(rng);
  return Graph::create(std::move(parts));
}

void run_lsp(benchmark::State& state, LshVariant variant) {
  const Graph g = circulant(static_cast<std::size_t>(state.range(0)), 4);
  const EdgeAttrTable t = build_edge_attrs(g, AttrMode::kNodeOnly);
  LshFamilyConfig cfg;
  cfg.variant = variant;
  cfg.k = static_cast<std::size_t>(state.range(1));
  cfg.d = t.dim();
  const LshFamily f(cfg);
  for (auto _ : state) {
    PruneResult r = lsp_prune(g, t, f);
    benchmark::DoNotOptimize(r.kept.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges() * cfg.k));
}

void BM_LspPruneProjection(benchmark::State& state) { run_lsp(state, LshVariant::kProjection); }
BENCHMARK(BM_LspPruneProjection)->Args({20000, 4})->Args({40000, 4})->Args({20000, 8})->Unit(benchmark::kMillisecond);

void BM_LspPruneThreshold(benchmark::State& state) { run_lsp(state, LshVariant::kThreshold); }
BENCHMARK(BM_LspPruneThreshold)->Args({20000, 4})->Args({20000, 8})->Unit(benchmark::kMillisecond);

void BM_RandomPrune(benchmark::State& state) {
  const Graph g = circulant(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    PruneResult r = random_prune(g, {0.5, 3});
    benchmark::DoNotOptimize(r.kept.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_RandomPrune)->Arg(20000)->Arg(40000)->Unit(benchmark::kMillisecond);

void BM_KHopSizes(benchmark::State& state) {
  const Graph g = circulant(5000, 1);
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(khop_sizes(g, k));
}
BENCHMARK(BM_KHopSizes)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Md5Signature(benchmark::State& state) {
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(state.range(0)), 0xA5);
  for (auto _ : state) benchmark::DoNotOptimize(md5_prefix64(bytes));
}
BENCHMARK(BM_Md5Signature)->Arg(1)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
