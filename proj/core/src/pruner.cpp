#include "lsp/pruner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "parallel.hpp"

namespace lsp {
namespace {

void finish_stats(PruneResult& r, std::size_t num_edges) {
  r.stats.num_edges = num_edges;
  r.stats.kept_edges = r.kept.size();
  r.stats.kept_fraction =
      num_edges == 0 ? 1.0 : static_cast<double>(r.kept.size()) / static_cast<double>(num_edges);
}

}  // namespace

PruneResult lsp_prune(const Graph& g, const EdgeAttrTable& attrs, const LshFamily& family,
                      const PruneOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const bool canonical = attrs.order() == EndpointOrder::kCanonical;
  const std::size_t num_edges = g.num_edges();
  const std::size_t rows_expected = canonical ? num_edges : 2 * num_edges;
  if (attrs.matrix().rows() != rows_expected) {
    throw data_error("dimension-mismatch", "attribute table has " + std::to_string(attrs.matrix().rows()) +
                                               " rows, graph needs " + std::to_string(rows_expected));
  }
  if (num_edges > 0 && attrs.dim() != family.dim()) {
    throw data_error("dimension-mismatch", "attribute dimension " + std::to_string(attrs.dim()) +
                                               " != family dimension " + std::to_string(family.dim()));
  }

  const std::size_t n = g.num_nodes();
  const std::size_t k = family.size();
  PruneResult result;
  result.functions = k;
  result.selected_neighbor.assign(n * k, kNoNode);
  result.selected_edge.assign(n * k, kNoEdge);

  const AdjacencyView adj(g);
  const unsigned threads = std::max(1u, options.threads);

  // Hashes for one function at a time: from_u[e] is the value seen by
  // edge(e).u, from_v[e] by edge(e).v (aliases from_u for canonical tables).
  std::vector<std::int64_t> from_u(num_edges);
  std::vector<std::int64_t> from_v(canonical ? 0 : num_edges);

  for (std::size_t i = 0; i < k; ++i) {
    detail::parallel_for(num_edges, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t e = begin; e < end; ++e) {
        from_u[e] = family.hash_unchecked(i, attrs.row_for(static_cast<EdgeId>(e), true));
        if (!canonical) from_v[e] = family.hash_unchecked(i, attrs.row_for(static_cast<EdgeId>(e), false));
      }
    });
    const std::vector<std::int64_t>& second = canonical ? from_u : from_v;

    detail::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t u = begin; u < end; ++u) {
        const auto nbrs = adj.neighbors(static_cast<NodeId>(u));
        if (nbrs.empty()) continue;
        const auto eids = adj.incident_edges(static_cast<NodeId>(u));
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        std::size_t best_pos = 0;
        // Neighbors are ascending, so strict < keeps the smallest index on ties.
        for (std::size_t p = 0; p < nbrs.size(); ++p) {
          const EdgeId e = eids[p];
          const std::int64_t h = g.edge(e).u == u ? from_u[e] : second[e];
          if (p == 0 || h < best) {
            best = h;
            best_pos = p;
          }
        }
        result.selected_neighbor[u * k + i] = nbrs[best_pos];
        result.selected_edge[u * k + i] = eids[best_pos];
      }
    });
  }

  std::vector<char> keep(num_edges, 0);
  for (EdgeId e : result.selected_edge) {
    if (e != kNoEdge) keep[e] = 1;
  }
  for (std::size_t e = 0; e < num_edges; ++e) {
    if (keep[e]) result.kept.push_back(static_cast<EdgeId>(e));
  }

  finish_stats(result, num_edges);
  result.stats.hash_evaluations = static_cast<std::uint64_t>(k) * rows_expected;
  result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void RandomPruneConfig::validate() const {
  if (!(keep_probability >= 0.0 && keep_probability <= 1.0)) {
    throw usage_error("bad-config", "keep probability must lie in [0, 1]");
  }
}

PruneResult random_prune(const Graph& g, const RandomPruneConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  PruneResult result;
  std::mt19937_64 rng(mix_seed(config.seed, config.stream));
  std::bernoulli_distribution keep(config.keep_probability);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (keep(rng)) result.kept.push_back(static_cast<EdgeId>(e));
  }
  finish_stats(result, g.num_edges());
  result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Graph pruned_graph(const Graph& g, const PruneResult& result) { return g.with_edges(result.kept); }

std::size_t attr_dim(const Graph& g, const AttrOptions& options) {
  const AttrMode mode = options.mode ? *options.mode : infer_attr_mode(g);
  const std::size_t q = options.node_vocab > 0 ? options.node_vocab : g.node_dim();
  const std::size_t de = options.edge_vocab > 0 ? options.edge_vocab : g.edge_dim();
  switch (mode) {
    case AttrMode::kNodeOnly: return 2 * q;
    case AttrMode::kNodeAndEdge: return 2 * q + de;
    case AttrMode::kRawEdge: return de;
  }
  return 0;
}

EdgeAttrTable prepare_edge_attrs(const Graph& g, const AttrOptions& options) {
  const AttrMode mode = options.mode ? *options.mode : infer_attr_mode(g);
  EdgeAttrTable table;
  if (options.node_vocab > 0 || options.edge_vocab > 0) {
    const bool nodes = options.node_vocab > 0 && mode != AttrMode::kRawEdge;
    const bool edges = options.edge_vocab > 0 && mode != AttrMode::kNodeOnly;
    const Graph embedded = embed_scalar_graph(g, nodes ? options.node_vocab : 0, mix_seed(options.embed_seed, 1),
                                              edges ? options.edge_vocab : 0, mix_seed(options.embed_seed, 2));
    table = build_edge_attrs(embedded, mode, options.order);
  } else {
    table = build_edge_attrs(g, mode, options.order);
  }
  if (options.zscore) zscore_columns(table);
  return table;
}

namespace {

template <typename Fn>
std::vector<BatchItem> run_batch(std::span<const Graph> graphs, bool strict, Fn&& one) {
  std::vector<BatchItem> out(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    try {
      out[i].result = one(i, graphs[i]);
    } catch (const Error& e) {
      if (strict || e.kind() == ErrorKind::kInternal) {
        throw Error(e.kind(), e.category(), "graph " + std::to_string(i) + " ('" + graphs[i].name() +
                                                "'): " + std::string(e.what()));
      }
      out[i].error = e.what();
    }
  }
  return out;
}

}  // namespace

std::vector<BatchItem> prune_dataset(std::span<const Graph> graphs, const LshFamily& family,
                                     const AttrOptions& attr_options, bool strict, const PruneOptions& options) {
  return run_batch(graphs, strict, [&](std::size_t, const Graph& g) {
    return lsp_prune(g, prepare_edge_attrs(g, attr_options), family, options);
  });
}

std::vector<BatchItem> prune_dataset(std::span<const Graph> graphs, const RandomPruneConfig& config, bool strict) {
  config.validate();
  return run_batch(graphs, strict, [&](std::size_t i, const Graph& g) {
    RandomPruneConfig per_graph = config;
    per_graph.stream = config.stream + i;
    return random_prune(g, per_graph);
  });
}

}  // namespace lsp
