#include "lsp/attributes.hpp"

#include <cmath>
#include <random>
#include <string>

namespace lsp {

std::string_view to_string(AttrMode mode) noexcept {
  switch (mode) {
    case AttrMode::kNodeOnly: return "node_only";
    case AttrMode::kNodeAndEdge: return "node_and_edge";
    case AttrMode::kRawEdge: return "raw_edge";
  }
  return "?";
}

std::string_view to_string(EndpointOrder order) noexcept {
  return order == EndpointOrder::kCanonical ? "canonical" : "center_first";
}

AttrMode parse_attr_mode(std::string_view text) {
  if (text == "node_only") return AttrMode::kNodeOnly;
  if (text == "node_and_edge") return AttrMode::kNodeAndEdge;
  if (text == "raw_edge") return AttrMode::kRawEdge;
  throw usage_error("bad-attr-mode", std::string(text));
}

EndpointOrder parse_endpoint_order(std::string_view text) {
  if (text == "canonical") return EndpointOrder::kCanonical;
  if (text == "center_first") return EndpointOrder::kCenterFirst;
  throw usage_error("bad-endpoint-order", std::string(text));
}

AttrMode infer_attr_mode(const Graph& g) {
  if (g.has_node_attrs() && g.has_edge_attrs()) return AttrMode::kNodeAndEdge;
  if (g.has_node_attrs()) return AttrMode::kNodeOnly;
  if (g.has_edge_attrs()) return AttrMode::kRawEdge;
  throw data_error("missing-attributes", "graph '" + g.name() + "' has neither node nor edge attributes");
}

namespace {

void fill_row(const Graph& g, AttrMode mode, NodeId first, NodeId second, EdgeId e,
              std::span<double> out) {
  auto it = out.begin();
  auto put = [&it](std::span<const double> src) { it = std::copy(src.begin(), src.end(), it); };
  switch (mode) {
    case AttrMode::kNodeOnly:
      put(g.node_attrs().row(first));
      put(g.node_attrs().row(second));
      break;
    case AttrMode::kNodeAndEdge:
      put(g.node_attrs().row(first));
      put(g.edge_attrs().row(e));
      put(g.node_attrs().row(second));
      break;
    case AttrMode::kRawEdge:
      put(g.edge_attrs().row(e));
      break;
  }
}

}  // namespace

EdgeAttrTable build_edge_attrs(const Graph& g, AttrMode mode, EndpointOrder order) {
  const bool need_nodes = mode != AttrMode::kRawEdge;
  const bool need_edges = mode != AttrMode::kNodeOnly;
  if (need_nodes && !g.has_node_attrs()) {
    throw data_error("missing-attributes", std::string(to_string(mode)) + " requires node attributes");
  }
  if (need_edges && !g.has_edge_attrs()) {
    throw data_error("missing-attributes", std::string(to_string(mode)) + " requires edge attributes");
  }

  std::size_t d = 0;
  if (need_nodes) d += 2 * g.node_dim();
  if (need_edges) d += g.edge_dim();

  const std::size_t per_edge = order == EndpointOrder::kCanonical ? 1 : 2;
  Matrix rows(g.num_edges() * per_edge, d);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (order == EndpointOrder::kCanonical) {
      fill_row(g, mode, ed.u, ed.v, e, rows.row(e));
    } else {
      fill_row(g, mode, ed.u, ed.v, e, rows.row(2 * std::size_t{e}));
      fill_row(g, mode, ed.v, ed.u, e, rows.row(2 * std::size_t{e} + 1));
    }
  }
  return EdgeAttrTable(std::move(rows), mode, order);
}

void zscore_columns(EdgeAttrTable& table) {
  Matrix& m = table.matrix();
  if (m.rows() == 0) return;
  const double n = static_cast<double>(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) mean += m(r, c);
    mean /= n;
    double var = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) var += (m(r, c) - mean) * (m(r, c) - mean);
    const double sd = std::sqrt(var / n);
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = sd > 0.0 ? (m(r, c) - mean) / sd : 0.0;
  }
}

EmbeddingTable::EmbeddingTable(std::size_t m, std::uint64_t seed) : m_(m), values_(m * m) {
  if (m == 0) throw usage_error("bad-vocabulary", "embedding table size must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : values_) v = normal(rng);
}

Matrix embed_scalar_attrs(std::span<const std::uint64_t> values, std::size_t m, std::uint64_t seed) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= m) {
      throw data_error("scalar-out-of-range", "value " + std::to_string(values[i]) + " at position " +
                                                  std::to_string(i) + " >= vocabulary " + std::to_string(m));
    }
  }
  const EmbeddingTable table(m, seed);
  Matrix out(values.size(), m);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto col = table.column(values[i]);
    std::copy(col.begin(), col.end(), out.row(i).begin());
  }
  return out;
}

namespace {

std::vector<std::uint64_t> scalar_column(const Matrix& m, const char* what) {
  if (m.cols() != 1) {
    throw data_error("dimension-mismatch", std::string(what) + " scalar embedding needs 1-column attributes, got " +
                                               std::to_string(m.cols()));
  }
  std::vector<std::uint64_t> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double v = m(r, 0);
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
      throw data_error("scalar-out-of-range", std::string(what) + " attribute at row " + std::to_string(r) +
                                                  " is not a natural number");
    }
    out[r] = static_cast<std::uint64_t>(v);
  }
  return out;
}

}  // namespace

Graph embed_scalar_graph(const Graph& g, std::size_t node_vocab, std::uint64_t node_seed,
                         std::size_t edge_vocab, std::uint64_t edge_seed) {
  Graph::Parts parts = g.parts();
  if (node_vocab > 0) {
    parts.node_attrs = embed_scalar_attrs(scalar_column(g.node_attrs(), "node"), node_vocab, node_seed);
  }
  if (edge_vocab > 0) {
    parts.edge_attrs = embed_scalar_attrs(scalar_column(g.edge_attrs(), "edge"), edge_vocab, edge_seed);
  }
  return Graph::create(std::move(parts));
}

}  // namespace lsp
