#include "lsp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lsp/text.hpp"

namespace lsp {
namespace {

constexpr std::uint64_t kTemplateStream = 0x7465'6d70'6c61'7465ULL;
constexpr std::uint64_t kSampleStream = 0x7361'6d70'6c65'0000ULL;

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw usage_error("bad-config", std::string(name) + " must lie in [0, 1]");
}

void check_std(double s, const char* name) {
  if (!(s > 0.0) || !std::isfinite(s)) throw usage_error("bad-config", std::string(name) + " must be > 0");
}

}  // namespace

void GeneratorConfig::validate() const {
  if (num_classes < 1) throw usage_error("bad-config", "num_classes must be >= 1");
  if (min_nodes < 1) throw usage_error("bad-config", "min_nodes must be >= 1");
  if (min_nodes > max_nodes) throw usage_error("bad-config", "min_nodes must not exceed max_nodes");
  if (max_nodes >= kNoNode) throw usage_error("bad-config", "max_nodes too large");
  check_probability(connectivity_rate, "connectivity_rate");
  check_probability(node_removal_probability, "node_removal_probability");
  if (node_removal_probability >= 1.0) {
    throw usage_error("bad-config", "node_removal_probability must be < 1 (every sample needs a node)");
  }
  check_std(node_centers_std, "node_centers_std");
  check_std(edge_centers_std, "edge_centers_std");
  check_std(node_noise_std, "node_noise_std");
  check_std(edge_noise_std, "edge_noise_std");
}

std::vector<std::pair<std::string, std::string>> GeneratorConfig::to_key_values() const {
  return {
      {"num_samples", format_uint(num_samples)},
      {"num_classes", format_uint(num_classes)},
      {"min_nodes", format_uint(min_nodes)},
      {"max_nodes", format_uint(max_nodes)},
      {"node_dim", format_uint(node_dim)},
      {"edge_dim", format_uint(edge_dim)},
      {"connectivity_rate", format_double(connectivity_rate)},
      {"node_centers_std", format_double(node_centers_std)},
      {"edge_centers_std", format_double(edge_centers_std)},
      {"node_noise_std", format_double(node_noise_std)},
      {"edge_noise_std", format_double(edge_noise_std)},
      {"is_symmetric", is_symmetric ? "true" : "false"},
      {"node_removal_probability", format_double(node_removal_probability)},
      {"seed", format_uint(seed)},
  };
}

void GeneratorConfig::set(const std::string& key, const std::string& value) {
  if (key == "num_samples") num_samples = parse_uint(value, key);
  else if (key == "num_classes") num_classes = parse_uint(value, key);
  else if (key == "min_nodes") min_nodes = parse_uint(value, key);
  else if (key == "max_nodes") max_nodes = parse_uint(value, key);
  else if (key == "node_dim") node_dim = parse_uint(value, key);
  else if (key == "edge_dim") edge_dim = parse_uint(value, key);
  else if (key == "connectivity_rate") connectivity_rate = parse_double(value, key);
  else if (key == "node_centers_std") node_centers_std = parse_double(value, key);
  else if (key == "edge_centers_std") edge_centers_std = parse_double(value, key);
  else if (key == "node_noise_std") node_noise_std = parse_double(value, key);
  else if (key == "edge_noise_std") edge_noise_std = parse_double(value, key);
  else if (key == "is_symmetric") is_symmetric = parse_bool(value, key);
  else if (key == "node_removal_probability") node_removal_probability = parse_double(value, key);
  else if (key == "seed") seed = parse_uint(value, key);
  else throw usage_error("unknown-key", key);
}

ClassTemplate generate_class_template(const GeneratorConfig& config, std::size_t class_index) {
  config.validate();
  if (class_index >= config.num_classes) {
    throw usage_error("out-of-range-index", "class " + std::to_string(class_index) + " of " +
                                                std::to_string(config.num_classes));
  }
  std::mt19937_64 rng(mix_seed(config.seed, kTemplateStream, class_index));
  std::bernoulli_distribution link(config.connectivity_rate);
  const auto n = static_cast<NodeId>(config.max_nodes);

  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (a == b || (config.is_symmetric && b < a)) continue;
      if (link(rng)) arcs.emplace_back(a, b);
    }
  }

  ClassTemplate t;
  t.class_index = class_index;
  t.edges = symmetrize(arcs);

  std::normal_distribution<double> node_center(0.0, config.node_centers_std);
  std::normal_distribution<double> edge_center(0.0, config.edge_centers_std);
  t.node_centers = Matrix(n, config.node_dim);
  for (double& v : t.node_centers.data()) v = node_center(rng);
  t.edge_centers = Matrix(t.edges.size(), config.edge_dim);
  for (double& v : t.edge_centers.data()) v = edge_center(rng);
  return t;
}

GeneratedSample generate_sample(const GeneratorConfig& config, const ClassTemplate& tmpl, std::size_t index) {
  std::mt19937_64 rng(mix_seed(config.seed, kSampleStream, index));
  const std::size_t n = std::uniform_int_distribution<std::size_t>(config.min_nodes, config.max_nodes)(rng);

  std::normal_distribution<double> node_noise(0.0, config.node_noise_std);
  std::normal_distribution<double> edge_noise(0.0, config.edge_noise_std);

  Matrix node_attrs(n, config.node_dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < config.node_dim; ++c) node_attrs(i, c) = tmpl.node_centers(i, c) + node_noise(rng);
  }

  // Template edges are sorted by (u, v), so the induced set is a prefix
  // filtered on v.
  std::vector<std::size_t> induced;
  for (std::size_t e = 0; e < tmpl.edges.size() && tmpl.edges[e].u < n; ++e) {
    if (tmpl.edges[e].v < n) induced.push_back(e);
  }
  Matrix edge_attrs(induced.size(), config.edge_dim);
  for (std::size_t j = 0; j < induced.size(); ++j) {
    for (std::size_t c = 0; c < config.edge_dim; ++c) {
      edge_attrs(j, c) = tmpl.edge_centers(induced[j], c) + edge_noise(rng);
    }
  }

  std::bernoulli_distribution removed(config.node_removal_probability);
  std::vector<char> alive(n);
  bool any = false;
  while (!any) {
    for (std::size_t i = 0; i < n; ++i) {
      alive[i] = removed(rng) ? 0 : 1;
      any = any || alive[i];
    }
  }

  GeneratedSample s;
  s.label = index % config.num_classes;
  std::vector<NodeId> remap(n, kNoNode);
  Graph::Parts parts;
  parts.node_attrs = Matrix(0, config.node_dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    remap[i] = static_cast<NodeId>(s.template_nodes.size());
    s.template_nodes.push_back(i);
    if (config.node_dim > 0) parts.node_attrs.append_row(node_attrs.row(i));
  }
  parts.num_nodes = s.template_nodes.size();
  parts.edge_attrs = Matrix(0, config.edge_dim);
  for (std::size_t j = 0; j < induced.size(); ++j) {
    const Edge& te = tmpl.edges[induced[j]];
    if (remap[te.u] == kNoNode || remap[te.v] == kNoNode) continue;
    parts.edges.push_back({remap[te.u], remap[te.v]});
    s.template_edges.push_back(induced[j]);
    if (config.edge_dim > 0) parts.edge_attrs.append_row(edge_attrs.row(j));
  }
  parts.graph_label = static_cast<std::int64_t>(s.label);
  parts.name = "sample_" + std::to_string(index);
  s.graph = Graph::create(std::move(parts));
  return s;
}

std::vector<GeneratedSample> generate_dataset(const GeneratorConfig& config) {
  config.validate();
  std::vector<ClassTemplate> templates;
  templates.reserve(std::min(config.num_classes, config.num_samples));
  for (std::size_t c = 0; c < std::min(config.num_classes, config.num_samples); ++c) {
    templates.push_back(generate_class_template(config, c));
  }
  std::vector<GeneratedSample> out;
  out.reserve(config.num_samples);
  for (std::size_t i = 0; i < config.num_samples; ++i) {
    out.push_back(generate_sample(config, templates[i % config.num_classes], i));
  }
  return out;
}

}  // namespace lsp
