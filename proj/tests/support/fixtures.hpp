#pragma once

// Test-only graph builders and brute-force oracles. Nothing here calls into
// the code paths it is used to check (no AdjacencyView, no lsp_prune, no BFS).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lsp/lsp.hpp"

namespace lsp::testing {

inline Graph make_graph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs, Matrix node_attrs = {},
                        Matrix edge_attrs = {}, std::vector<NodeId> loops = {}) {
  Graph::Parts p;
  p.num_nodes = n;
  for (auto [a, b] : pairs) p.edges.push_back({a, b});
  p.node_attrs = std::move(node_attrs);
  p.edge_attrs = std::move(edge_attrs);
  p.self_loops = std::move(loops);
  return Graph::create(std::move(p));
}

/// G(n, p) with standard-normal attributes.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed, std::size_t node_dim = 3,
                          std::size_t edge_dim = 0) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution link(p);
  std::normal_distribution<double> normal;
  Graph::Parts parts;
  parts.num_nodes = n;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (link(rng)) parts.edges.push_back({a, b});
    }
  }
  parts.node_attrs = Matrix(n, node_dim);
  for (double& v : parts.node_attrs.data()) v = normal(rng);
  parts.edge_attrs = Matrix(parts.edges.size(), edge_dim);
  for (double& v : parts.edge_attrs.data()) v = normal(rng);
  return Graph::create(std::move(parts));
}

/// Naive MinHash selection: for each (node, function) scan the whole edge
/// list, hash every incident edge with the checked hash, keep the minimum
/// (ties to the smaller neighbor).
struct NaiveSelection {
  std::set<EdgeId> kept;
  std::vector<std::vector<NodeId>> chosen;  // [node][function]
};

inline NaiveSelection naive_lsp(const Graph& g, const EdgeAttrTable& attrs, const LshFamily& family) {
  NaiveSelection out;
  out.chosen.assign(g.num_nodes(), {});
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      NodeId best_v = kNoNode;
      EdgeId best_e = kNoEdge;
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.u != u && ed.v != u) continue;
        const NodeId v = ed.other(u);
        const std::int64_t h = family.hash(i, attrs.row(g, e, u));
        if (best_v == kNoNode || h < best || (h == best && v < best_v)) {
          best = h;
          best_v = v;
          best_e = e;
        }
      }
      if (best_v == kNoNode) continue;
      out.chosen[u].push_back(best_v);
      out.kept.insert(best_e);
    }
  }
  return out;
}

/// All-pairs hop distances by Floyd-Warshall; unreachable = max.
inline std::vector<std::vector<std::size_t>> hop_distances(const Graph& g) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline std::vector<std::size_t> brute_khop(const Graph& g, std::size_t k) {
  const auto d = hop_distances(g);
  std::vector<std::size_t> out(g.num_nodes(), 0);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (i != j && d[i][j] <= k) ++out[i];
  return out;
}

/// Two mirrored environments, as in the two-class consistency example.
///
/// Each side has `centers` center nodes and a pool of centers + 2 shared
/// neighbor nodes; center c links to pool nodes c, c+1, c+2, c+3 (mod pool).
/// Right-side node r mirrors left-side node r - side and
/// carries identical node attributes, and the mirror preserves index order,
/// so every (left center, right center) twin sees the same multiset of
/// canonical edge attribute rows.
struct TwinScenario {
  Graph graph;
  std::vector<std::pair<NodeId, NodeId>> twins;  // (left center, right center)
};

inline TwinScenario twin_scenario(std::uint64_t seed, std::size_t centers = 4, std::size_t dim = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t pool = centers + 2;
  const std::size_t side = centers + pool;  // centers first, then the pool
  Graph::Parts p;
  p.num_nodes = 2 * side;
  p.node_attrs = Matrix(2 * side, dim);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double v = normal(rng);
      p.node_attrs(i, c) = v;
      p.node_attrs(i + side, c) = v;
    }
  }
  TwinScenario s;
  for (int half = 0; half < 2; ++half) {
    const auto off = static_cast<NodeId>(half * side);
    for (NodeId c = 0; c < centers; ++c) {
      for (NodeId j = 0; j < 4; ++j) {
        p.edges.push_back({off + c, off + static_cast<NodeId>(centers + (c + j) % pool)});
      }
    }
  }
  s.graph = Graph::create(std::move(p));
  for (NodeId c = 0; c < centers; ++c) s.twins.emplace_back(c, c + static_cast<NodeId>(side));
  return s;
}

/// Attribute rows (as vectors) of the neighbors a node selected, sorted.
inline std::vector<std::vector<double>> selected_rows(const Graph& g, const EdgeAttrTable& attrs,
                                                      const PruneResult& r, NodeId u) {
  std::set<EdgeId> edges;
  for (EdgeId e : r.selected_edges(u)) {
    if (e != kNoEdge) edges.insert(e);
  }
  std::vector<std::vector<double>> rows;
  for (EdgeId e : edges) {
    const auto row = attrs.row(g, e, u);
    rows.emplace_back(row.begin(), row.end());
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace lsp::testing
