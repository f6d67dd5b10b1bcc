#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "lsp/common.hpp"
#include "lsp/graph.hpp"

namespace lsp {

enum class AttrMode { kNodeOnly, kNodeAndEdge, kRawEdge };
enum class EndpointOrder { kCanonical, kCenterFirst };

std::string_view to_string(AttrMode mode) noexcept;
std::string_view to_string(EndpointOrder order) noexcept;
AttrMode parse_attr_mode(std::string_view text);
EndpointOrder parse_endpoint_order(std::string_view text);

/// Picks node_and_edge, node_only or raw_edge from whichever attribute
/// matrices the graph carries.
AttrMode infer_attr_mode(const Graph& g);

/// Per-edge hash inputs.
///
/// With canonical order there is one row per edge: [x_u | e_uv | x_v] with u
/// the smaller index. With center_first there are two rows per edge; row 2i
/// is oriented from edge(i).u and row 2i+1 from edge(i).v, so each endpoint
/// hashes a vector that starts with its own attributes.
class EdgeAttrTable {
 public:
  EdgeAttrTable() = default;
  EdgeAttrTable(Matrix rows, AttrMode mode, EndpointOrder order)
      : rows_(std::move(rows)), mode_(mode), order_(order) {}

  std::size_t dim() const noexcept { return rows_.cols(); }
  AttrMode mode() const noexcept { return mode_; }
  EndpointOrder order() const noexcept { return order_; }
  const Matrix& matrix() const noexcept { return rows_; }
  Matrix& matrix() noexcept { return rows_; }

  /// Row hashed by node `center` for edge `e`.
  std::span<const double> row_for(EdgeId e, bool center_is_u) const noexcept {
    if (order_ == EndpointOrder::kCanonical) return rows_.row(e);
    return rows_.row(2 * static_cast<std::size_t>(e) + (center_is_u ? 0 : 1));
  }

  /// Row of edge `e` as seen from endpoint `from` (either endpoint for canonical tables).
  std::span<const double> row(const Graph& g, EdgeId e, NodeId from) const noexcept {
    return row_for(e, g.edge(e).u == from);
  }

  friend bool operator==(const EdgeAttrTable&, const EdgeAttrTable&) = default;

 private:
  Matrix rows_;
  AttrMode mode_ = AttrMode::kNodeOnly;
  EndpointOrder order_ = EndpointOrder::kCanonical;
};

EdgeAttrTable build_edge_attrs(const Graph& g, AttrMode mode,
                               EndpointOrder order = EndpointOrder::kCanonical);

/// In-place per-column z-score (population std). Constant columns become 0.
void zscore_columns(EdgeAttrTable& table);

/// m x m standard-normal matrix, filled column-major from a generator seeded
/// with `seed`. Column r embeds scalar value r.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t m, std::uint64_t seed);

  std::size_t size() const noexcept { return m_; }
  /// Column r, contiguous (storage is column-major).
  std::span<const double> column(std::size_t r) const noexcept { return {values_.data() + r * m_, m_}; }

 private:
  std::size_t m_;
  std::vector<double> values_;
};

/// One output row per value: row i is column values[i] of EmbeddingTable(m, seed).
Matrix embed_scalar_attrs(std::span<const std::uint64_t> values, std::size_t m, std::uint64_t seed);

/// Replaces 1-column natural-valued node (and/or edge) attributes by their
/// embeddings. Pass vocab 0 to leave that side untouched.
Graph embed_scalar_graph(const Graph& g, std::size_t node_vocab, std::uint64_t node_seed,
                         std::size_t edge_vocab, std::uint64_t edge_seed);

}  // namespace lsp
