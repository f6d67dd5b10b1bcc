#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsp/attributes.hpp"
#include "lsp/graph.hpp"
#include "lsp/lsh.hpp"

namespace lsp {

struct PruneStats {
  std::size_t num_edges = 0;
  std::size_t kept_edges = 0;
  double kept_fraction = 1.0;  // 1 for an edgeless graph
  double wall_seconds = 0.0;
  std::uint64_t hash_evaluations = 0;
};

/// Retained edges plus, for LSP runs, the per-node MinHash selections.
struct PruneResult {
  std::vector<EdgeId> kept;  // ascending edge indices into the input graph
  std::size_t functions = 0;  // k, or 0 for random pruning
  /// num_nodes * functions entries; slot (u, i) holds the neighbor that won
  /// function i at node u, or kNoNode when u is isolated.
  std::vector<NodeId> selected_neighbor;
  std::vector<EdgeId> selected_edge;
  PruneStats stats;

  std::span<const NodeId> selections(NodeId u) const noexcept {
    return {selected_neighbor.data() + std::size_t{u} * functions, functions};
  }
  std::span<const EdgeId> selected_edges(NodeId u) const noexcept {
    return {selected_edge.data() + std::size_t{u} * functions, functions};
  }

  friend bool operator==(const PruneResult& a, const PruneResult& b) {
    return a.kept == b.kept && a.functions == b.functions && a.selected_neighbor == b.selected_neighbor &&
           a.selected_edge == b.selected_edge;
  }
};

struct PruneOptions {
  unsigned threads = 1;
};

/// MinHash edge selection. For every non-isolated node u and every function
/// i, keeps the incident edge whose attribute row hashes lowest under i (ties
/// to the smallest neighbor index). The kept set is the union over nodes.
///
/// With a canonical attribute table each (edge, function) hash is computed
/// once and shared by both endpoints; center_first tables hash each side.
PruneResult lsp_prune(const Graph& g, const EdgeAttrTable& attrs, const LshFamily& family,
                      const PruneOptions& options = {});

struct RandomPruneConfig {
  double keep_probability = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // batch drivers use the graph index

  void validate() const;
};

/// Keeps each edge independently with probability p.
PruneResult random_prune(const Graph& g, const RandomPruneConfig& config);

/// G' = (V, E'): original nodes, node attributes, labels and self-loops; the
/// kept edges with their attribute rows.
Graph pruned_graph(const Graph& g, const PruneResult& result);

/// Options that turn a graph into the table fed to the hash functions.
struct AttrOptions {
  std::optional<AttrMode> mode;  // nullopt: infer from the graph
  EndpointOrder order = EndpointOrder::kCanonical;
  bool zscore = false;
  std::size_t node_vocab = 0;  // > 0: node attributes are scalars to embed
  std::size_t edge_vocab = 0;
  std::uint64_t embed_seed = 0;
};

std::size_t attr_dim(const Graph& g, const AttrOptions& options);
EdgeAttrTable prepare_edge_attrs(const Graph& g, const AttrOptions& options);

struct BatchItem {
  std::optional<PruneResult> result;
  std::string error;  // set when result is empty
};

/// Applies the same family to every graph, results in input order. With
/// `strict`, the first failure throws a data error naming the graph index;
/// otherwise the failure is recorded in the item and the batch continues.
std::vector<BatchItem> prune_dataset(std::span<const Graph> graphs, const LshFamily& family,
                                     const AttrOptions& attr_options, bool strict,
                                     const PruneOptions& options = {});

/// Random baseline over a batch; graph i uses stream i of the seed.
std::vector<BatchItem> prune_dataset(std::span<const Graph> graphs, const RandomPruneConfig& config, bool strict);

}  // namespace lsp
