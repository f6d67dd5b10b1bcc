#include "lsp/graph.hpp"

#include <algorithm>
#include <unordered_set>

namespace lsp {

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) {
    throw data_error("dimension-mismatch", "row of width " + std::to_string(values.size()) +
                                               " appended to matrix of width " +
                                               std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

namespace {

std::string edge_text(std::size_t i, NodeId a, NodeId b) {
  return "edge #" + std::to_string(i) + " (" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

Graph Graph::create(Parts parts) {
  const std::size_t n = parts.num_nodes;
  if (n >= kNoNode) throw data_error("graph-too-large", std::to_string(n) + " nodes");
  if (parts.edges.size() >= kNoEdge) {
    throw data_error("graph-too-large", std::to_string(parts.edges.size()) + " edges");
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(parts.edges.size() * 2);
  for (std::size_t i = 0; i < parts.edges.size(); ++i) {
    Edge& e = parts.edges[i];
    if (e.u >= n || e.v >= n) {
      throw data_error("out-of-range-index",
                       edge_text(i, e.u, e.v) + " with " + std::to_string(n) + " nodes");
    }
    if (e.u == e.v) {
      throw data_error("self-loop-in-edges", edge_text(i, e.u, e.v) + "; self-loops are stored separately");
    }
    e = canonical(e.u, e.v);
    const std::uint64_t key = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    if (!seen.insert(key).second) throw data_error("duplicate-edge", edge_text(i, e.u, e.v));
  }

  if (parts.node_attrs.cols() > 0 && parts.node_attrs.rows() != n) {
    throw data_error("dimension-mismatch", "node attribute rows " +
                                               std::to_string(parts.node_attrs.rows()) +
                                               " != num_nodes " + std::to_string(n));
  }
  if (parts.edge_attrs.cols() > 0 && parts.edge_attrs.rows() != parts.edges.size()) {
    throw data_error("dimension-mismatch", "edge attribute rows " +
                                               std::to_string(parts.edge_attrs.rows()) +
                                               " != num_edges " +
                                               std::to_string(parts.edges.size()));
  }
  if (parts.node_attrs.cols() == 0) parts.node_attrs = Matrix(n, 0);
  if (parts.edge_attrs.cols() == 0) parts.edge_attrs = Matrix(parts.edges.size(), 0);

  std::sort(parts.self_loops.begin(), parts.self_loops.end());
  for (std::size_t i = 0; i < parts.self_loops.size(); ++i) {
    if (parts.self_loops[i] >= n) {
      throw data_error("out-of-range-index", "self-loop at node " +
                                                 std::to_string(parts.self_loops[i]) + " with " +
                                                 std::to_string(n) + " nodes");
    }
    if (i > 0 && parts.self_loops[i] == parts.self_loops[i - 1]) {
      throw data_error("duplicate-edge",
                       "self-loop at node " + std::to_string(parts.self_loops[i]) + " repeated");
    }
  }

  if (!parts.node_labels.empty() && parts.node_labels.size() != n) {
    throw data_error("dimension-mismatch", "node label count " +
                                               std::to_string(parts.node_labels.size()) +
                                               " != num_nodes " + std::to_string(n));
  }
  if (!parts.original_ids.empty()) {
    if (parts.original_ids.size() != n) {
      throw data_error("dimension-mismatch", "id map size != num_nodes");
    }
    bool identity = true;
    for (std::size_t i = 0; i < n && identity; ++i) {
      identity = parts.original_ids[i] == static_cast<std::int64_t>(i);
    }
    if (identity) parts.original_ids.clear();
  }

  Graph g(std::move(parts));
  g.degree_.assign(n, 0);
  for (const Edge& e : g.parts_.edges) {
    ++g.degree_[e.u];
    ++g.degree_[e.v];
  }
  return g;
}

std::size_t Graph::degree(NodeId u) const {
  if (u >= num_nodes()) {
    throw usage_error("out-of-range-index",
                      "node " + std::to_string(u) + " with " + std::to_string(num_nodes()) + " nodes");
  }
  return degree_[u];
}

Graph Graph::with_edges(std::span<const EdgeId> kept) const {
  Parts out;
  out.num_nodes = parts_.num_nodes;
  out.node_attrs = parts_.node_attrs;
  out.self_loops = parts_.self_loops;
  out.node_labels = parts_.node_labels;
  out.graph_label = parts_.graph_label;
  out.original_ids = parts_.original_ids;
  out.name = parts_.name;
  out.edges.reserve(kept.size());
  out.edge_attrs = Matrix(0, parts_.edge_attrs.cols());
  out.edge_attrs.data().reserve(kept.size() * parts_.edge_attrs.cols());
  for (EdgeId e : kept) {
    out.edges.push_back(parts_.edges[e]);
    if (has_edge_attrs()) out.edge_attrs.append_row(parts_.edge_attrs.row(e));
  }
  if (!has_edge_attrs()) out.edge_attrs = Matrix(kept.size(), 0);

  // Already validated; skip the hash-set pass.
  Graph g(std::move(out));
  g.degree_.assign(g.parts_.num_nodes, 0);
  for (const Edge& e : g.parts_.edges) {
    ++g.degree_[e.u];
    ++g.degree_[e.v];
  }
  return g;
}

bool operator==(const Graph& a, const Graph& b) {
  const Graph::Parts& x = a.parts_;
  const Graph::Parts& y = b.parts_;
  return x.num_nodes == y.num_nodes && x.edges == y.edges && x.node_attrs == y.node_attrs &&
         x.edge_attrs == y.edge_attrs && x.self_loops == y.self_loops &&
         x.node_labels == y.node_labels && x.graph_label == y.graph_label &&
         x.original_ids == y.original_ids && x.name == y.name;
}

AdjacencyView::AdjacencyView(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const auto edges = g.edges();
  const std::size_t arcs = edges.size() * 2;

  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];

  // Two stable counting-sort passes: first bucket arcs by target, then by
  // source. Each source bucket then lists targets in ascending order.
  std::vector<NodeId> by_target_src(arcs);
  std::vector<EdgeId> by_target_edge(arcs);
  {
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      std::size_t p = cursor[e.v]++;
      by_target_src[p] = e.u;
      by_target_edge[p] = static_cast<EdgeId>(i);
      p = cursor[e.u]++;
      by_target_src[p] = e.v;
      by_target_edge[p] = static_cast<EdgeId>(i);
    }
  }

  neighbors_.resize(arcs);
  edge_ids_.resize(arcs);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (NodeId target = 0; target < n; ++target) {
    for (std::size_t p = offsets_[target]; p < offsets_[target + 1]; ++p) {
      const NodeId src = by_target_src[p];
      const std::size_t q = cursor[src]++;
      neighbors_[q] = target;
      edge_ids_[q] = by_target_edge[p];
    }
  }
}

std::vector<Edge> symmetrize(std::span<const std::pair<NodeId, NodeId>> arcs) {
  std::vector<Edge> out;
  out.reserve(arcs.size());
  for (const auto& [a, b] : arcs) {
    if (a != b) out.push_back(canonical(a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lsp
