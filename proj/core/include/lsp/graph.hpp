#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lsp/common.hpp"

namespace lsp {

/// Undirected edge stored canonically (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  NodeId other(NodeId x) const noexcept { return x == u ? v : u; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge canonical(NodeId a, NodeId b) noexcept { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Undirected attributed graph. Immutable after construction: build one with
/// Graph::Builder or Graph::create, both of which validate every invariant.
class Graph {
 public:
  struct Parts {
    std::size_t num_nodes = 0;
    std::vector<Edge> edges;
    Matrix node_attrs;
    Matrix edge_attrs;
    std::vector<NodeId> self_loops;
    std::vector<std::optional<std::int64_t>> node_labels;  // empty or num_nodes entries
    std::optional<std::int64_t> graph_label;
    std::vector<std::int64_t> original_ids;  // empty means identity
    std::string name;
  };

  Graph() = default;

  /// Validates and canonicalizes. Edge pairs are swapped into u < v; a
  /// duplicate pair, a self-pair, or an out-of-range endpoint throws a data
  /// error naming the offending edge index.
  static Graph create(Parts parts);

  std::size_t num_nodes() const noexcept { return parts_.num_nodes; }
  std::size_t num_edges() const noexcept { return parts_.edges.size(); }
  std::span<const Edge> edges() const noexcept { return parts_.edges; }
  const Edge& edge(EdgeId e) const noexcept { return parts_.edges[e]; }

  bool has_node_attrs() const noexcept { return parts_.node_attrs.cols() > 0; }
  bool has_edge_attrs() const noexcept { return parts_.edge_attrs.cols() > 0; }
  const Matrix& node_attrs() const noexcept { return parts_.node_attrs; }
  const Matrix& edge_attrs() const noexcept { return parts_.edge_attrs; }
  std::size_t node_dim() const noexcept { return parts_.node_attrs.cols(); }
  std::size_t edge_dim() const noexcept { return parts_.edge_attrs.cols(); }

  std::span<const NodeId> self_loops() const noexcept { return parts_.self_loops; }
  const std::vector<std::optional<std::int64_t>>& node_labels() const noexcept {
    return parts_.node_labels;
  }
  const std::optional<std::int64_t>& graph_label() const noexcept { return parts_.graph_label; }
  const std::string& name() const noexcept { return parts_.name; }

  /// External id of a dense node index (identity unless the graph was read
  /// from a file with non-dense ids).
  std::int64_t original_id(NodeId u) const noexcept {
    return parts_.original_ids.empty() ? static_cast<std::int64_t>(u) : parts_.original_ids[u];
  }
  bool has_identity_ids() const noexcept { return parts_.original_ids.empty(); }

  /// Degree excluding self-loops. Throws on an out-of-range node.
  std::size_t degree(NodeId u) const;

  const Parts& parts() const noexcept { return parts_; }

  /// Same nodes, attributes, labels and self-loops; only the listed edges
  /// (ascending edge indices) with their attribute rows.
  Graph with_edges(std::span<const EdgeId> kept) const;

  friend bool operator==(const Graph&, const Graph&);

 private:
  explicit Graph(Parts parts) : parts_(std::move(parts)) {}

  Parts parts_;
  std::vector<std::uint32_t> degree_;
};

/// Compressed adjacency: for each node, neighbors ascending by index together
/// with the index of the connecting edge.
class AdjacencyView {
 public:
  explicit AdjacencyView(const Graph& g);

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {neighbors_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::span<const EdgeId> incident_edges(NodeId u) const noexcept {
    return {edge_ids_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  std::size_t total_arcs() const noexcept { return neighbors_.size(); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<EdgeId> edge_ids_;
};

inline AdjacencyView build_adjacency(const Graph& g) { return AdjacencyView(g); }

/// Merges a list of (possibly directed, possibly repeated) node pairs into a
/// canonical undirected edge list, sorted. Self-pairs are dropped.
std::vector<Edge> symmetrize(std::span<const std::pair<NodeId, NodeId>> arcs);

}  // namespace lsp
