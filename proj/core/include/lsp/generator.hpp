#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lsp/graph.hpp"

namespace lsp {

/// Synthetic graph-classification dataset parameters. Field defaults are the
/// reference configuration.
struct GeneratorConfig {
  std::size_t num_samples = 20000;
  std::size_t num_classes = 100;
  std::size_t min_nodes = 40;
  std::size_t max_nodes = 60;
  std::size_t node_dim = 10;
  std::size_t edge_dim = 40;
  double connectivity_rate = 0.2;  // per-pair edge probability
  double node_centers_std = 0.2;
  double edge_centers_std = 0.2;
  double node_noise_std = 0.25;
  double edge_noise_std = 0.1;
  bool is_symmetric = false;
  double node_removal_probability = 0.1;
  std::uint64_t seed = 0;

  void validate() const;

  /// Ordered `key = value` pairs using the field names above.
  std::vector<std::pair<std::string, std::string>> to_key_values() const;
  /// Applies one key; unknown keys and malformed values throw usage errors.
  void set(const std::string& key, const std::string& value);
};

/// Per-class structure shared by every sample of the class: an undirected
/// adjacency over max_nodes nodes plus attribute centers.
struct ClassTemplate {
  std::size_t class_index = 0;
  std::vector<Edge> edges;  // sorted canonical pairs
  Matrix node_centers;      // max_nodes x node_dim
  Matrix edge_centers;      // one row per template edge
};

ClassTemplate generate_class_template(const GeneratorConfig& config, std::size_t class_index);

struct GeneratedSample {
  Graph graph;
  std::size_t label = 0;
  /// Template node index of each surviving node, and template edge index of
  /// each edge; lets callers compare attributes against their centers.
  std::vector<std::size_t> template_nodes;
  std::vector<std::size_t> template_edges;
};

/// Sample `index` of the dataset (label = index mod num_classes).
GeneratedSample generate_sample(const GeneratorConfig& config, const ClassTemplate& tmpl, std::size_t index);

/// All samples, in index order. Graph names are "sample_<index>" and each
/// graph carries its class as graph_label.
std::vector<GeneratedSample> generate_dataset(const GeneratorConfig& config);

}  // namespace lsp
