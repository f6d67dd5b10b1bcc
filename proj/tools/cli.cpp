#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "lsp/lsp.hpp"

namespace lsp::cli {
namespace {

// One configurable key. CLI flag is "--" + key with '_' replaced by '-'.
struct KeySpec {
  std::string key;
  std::string help;
  bool flag = false;
};

std::string flag_name(const std::string& key) {
  std::string s = "--" + key;
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

// Collects raw string values for a subcommand's keys from the command line.
class RawOptions {
 public:
  RawOptions(CLI::App* app, const std::vector<KeySpec>& specs) : app_(app), specs_(specs) {
    for (const KeySpec& s : specs_) {
      if (s.flag) {
        app_->add_flag(flag_name(s.key), flags_[s.key], s.help);
      } else {
        app_->add_option(flag_name(s.key), values_[s.key], s.help);
      }
    }
    app_->add_option("--config", config_path_, "Flat 'key = value' config file; command-line flags override it");
  }

  // Config file entries first, then explicit flags, in a stable order.
  KeyValues collect() const {
    KeyValues kv;
    if (!config_path_.empty()) {
      for (auto& [k, v] : read_key_values(config_path_)) {
        const bool known = std::any_of(specs_.begin(), specs_.end(), [&](const KeySpec& s) { return s.key == k; });
        if (!known) throw usage_error("unknown-key", "'" + k + "' in " + config_path_);
        kv.emplace_back(k, v);
      }
    }
    for (const KeySpec& s : specs_) {
      if (app_->count(flag_name(s.key)) == 0) continue;
      kv.emplace_back(s.key, s.flag ? (flags_.at(s.key) ? "true" : "false") : values_.at(s.key));
    }
    return kv;
  }

 private:
  CLI::App* app_;
  std::vector<KeySpec> specs_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> flags_;
  std::string config_path_;
};

void echo(std::ostream& out, const char* command, const KeyValues& kv) {
  out << "# lsp " << command << " resolved configuration\n" << key_values_text(kv);
}

// ---------------------------------------------------------------- prune

const std::vector<KeySpec> kPruneKeys = {
    {"input", "Input graph container"},
    {"output", "Output graph container"},
    {"report", "Prune report (TSV)"},
    {"method", "lsp-t | lsp-p | random"},
    {"k", "Number of hash functions (lsp)"},
    {"m", "Bucket count, power of two (lsp-t)"},
    {"l", "Bin width (lsp-p)"},
    {"p", "Keep probability (random)"},
    {"seed", "Master seed for all randomness"},
    {"attr_mode", "auto | node_only | node_and_edge | raw_edge"},
    {"endpoint_order", "canonical | center_first"},
    {"zscore", "Z-score attribute columns before hashing", true},
    {"node_vocab", "Embed 1-column scalar node attributes with this vocabulary size"},
    {"edge_vocab", "Embed 1-column scalar edge attributes with this vocabulary size"},
    {"family_out", "Write the hash family parameters to this sidecar file"},
    {"family_in", "Replay a hash family from a sidecar file"},
    {"idmap", "Write the dense-index to original-id mapping (TSV)"},
    {"strict", "Abort the batch on the first failing graph", true},
    {"report_timing", "Include wall-clock columns in the report", true},
    {"threads", "Worker threads (output does not depend on it)"},
};

struct PruneSettings {
  std::string input;
  std::string output;
  std::string report;
  std::string method = "lsp-p";
  std::size_t k = 4;
  std::uint64_t m = 65536;
  double l = 1.0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string attr_mode = "auto";
  std::string endpoint_order = "canonical";
  bool zscore = false;
  std::size_t node_vocab = 0;
  std::size_t edge_vocab = 0;
  std::string family_out;
  std::string family_in;
  std::string idmap;
  bool strict = false;
  bool report_timing = false;
  unsigned threads = 1;
  std::set<std::string> provided;

  void set(const std::string& key, const std::string& v) {
    provided.insert(key);
    if (key == "input") input = v;
    else if (key == "output") output = v;
    else if (key == "report") report = v;
    else if (key == "method") method = v;
    else if (key == "k") k = parse_uint(v, key);
    else if (key == "m") m = parse_uint(v, key);
    else if (key == "l") l = parse_double(v, key);
    else if (key == "p") p = parse_double(v, key);
    else if (key == "seed") seed = parse_uint(v, key);
    else if (key == "attr_mode") attr_mode = v;
    else if (key == "endpoint_order") endpoint_order = v;
    else if (key == "zscore") zscore = parse_bool(v, key);
    else if (key == "node_vocab") node_vocab = parse_uint(v, key);
    else if (key == "edge_vocab") edge_vocab = parse_uint(v, key);
    else if (key == "family_out") family_out = v;
    else if (key == "family_in") family_in = v;
    else if (key == "idmap") idmap = v;
    else if (key == "strict") strict = parse_bool(v, key);
    else if (key == "report_timing") report_timing = parse_bool(v, key);
    else if (key == "threads") threads = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_uint(v, key)));
    else throw usage_error("unknown-key", key);
  }

  bool is_random() const { return method == "random"; }

  void validate() const {
    if (input.empty()) throw usage_error("missing-option", "--input is required");
    if (output.empty()) throw usage_error("missing-option", "--output is required");
    if (method != "random") parse_lsh_variant(method);
    const auto reject = [&](const char* key, const char* why) {
      if (provided.count(key)) throw usage_error("bad-option", std::string(key) + " " + why);
    };
    if (is_random()) {
      for (const char* key : {"k", "m", "l", "attr_mode", "endpoint_order", "zscore", "node_vocab", "edge_vocab",
                              "family_out", "family_in"}) {
        reject(key, "does not apply to --method random");
      }
      RandomPruneConfig{p, seed}.validate();
    } else {
      reject("p", "applies only to --method random");
      if (method == "lsp-t") reject("l", "applies only to lsp-p");
      if (method == "lsp-p") reject("m", "applies only to lsp-t");
      if (!family_in.empty()) {
        for (const char* key : {"k", "m", "l", "seed"}) reject(key, "is taken from --family-in");
      }
      if (attr_mode != "auto") parse_attr_mode(attr_mode);
      parse_endpoint_order(endpoint_order);
    }
  }

  KeyValues to_key_values() const {
    KeyValues kv = {{"input", input}, {"output", output}};
    if (!report.empty()) kv.emplace_back("report", report);
    kv.emplace_back("method", method);
    if (is_random()) {
      kv.emplace_back("p", format_double(p));
      kv.emplace_back("seed", format_uint(seed));
    } else {
      if (family_in.empty()) {
        kv.emplace_back("k", format_uint(k));
        if (method == "lsp-t") kv.emplace_back("m", format_uint(m));
        if (method == "lsp-p") kv.emplace_back("l", format_double(l));
      } else {
        kv.emplace_back("family_in", family_in);
      }
      if (family_in.empty() || provided.count("seed")) kv.emplace_back("seed", format_uint(seed));
      kv.emplace_back("attr_mode", attr_mode);
      kv.emplace_back("endpoint_order", endpoint_order);
      kv.emplace_back("zscore", zscore ? "true" : "false");
      kv.emplace_back("node_vocab", format_uint(node_vocab));
      kv.emplace_back("edge_vocab", format_uint(edge_vocab));
      if (!family_out.empty()) kv.emplace_back("family_out", family_out);
    }
    if (!idmap.empty()) kv.emplace_back("idmap", idmap);
    kv.emplace_back("strict", strict ? "true" : "false");
    kv.emplace_back("report_timing", report_timing ? "true" : "false");
    kv.emplace_back("threads", format_uint(threads));
    return kv;
  }
};

std::string report_text(std::span<const Graph> graphs, std::span<const BatchItem> items, bool timing) {
  std::string out = "graph_id\tnodes\tedges\tkept_edges\tkept_fraction\thash_evaluations\tstatus";
  if (timing) out += "\twall_seconds";
  out += '\n';
  std::size_t edges = 0;
  std::size_t kept = 0;
  std::uint64_t evals = 0;
  double seconds = 0.0;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    out += (g.name().empty() ? "graph_" + std::to_string(i) : g.name()) + '\t' + std::to_string(g.num_nodes()) + '\t' +
           std::to_string(g.num_edges()) + '\t';
    if (items[i].result) {
      const PruneStats& s = items[i].result->stats;
      out += std::to_string(s.kept_edges) + '\t' + format_double(s.kept_fraction) + '\t' +
             std::to_string(s.hash_evaluations) + "\tok";
      if (timing) out += '\t' + format_double(s.wall_seconds);
      edges += s.num_edges;
      kept += s.kept_edges;
      evals += s.hash_evaluations;
      seconds += s.wall_seconds;
    } else {
      std::string msg = items[i].error;
      std::replace(msg.begin(), msg.end(), '\t', ' ');
      out += "NA\tNA\tNA\terror: " + msg;
      if (timing) out += "\tNA";
      ++failures;
    }
    out += '\n';
  }
  const double frac = edges == 0 ? 1.0 : static_cast<double>(kept) / static_cast<double>(edges);
  out += "TOTAL\t-\t" + std::to_string(edges) + '\t' + std::to_string(kept) + '\t' + format_double(frac) + '\t' +
         std::to_string(evals) + '\t' + (failures == 0 ? "ok" : std::to_string(failures) + " failed");
  if (timing) out += '\t' + format_double(seconds);
  out += '\n';
  return out;
}

int run_prune(const PruneSettings& s, std::ostream& out, std::ostream& err) {
  s.validate();
  echo(out, "prune", s.to_key_values());

  const std::vector<Graph> graphs = read_container(s.input);
  std::vector<BatchItem> items;
  if (s.is_random()) {
    items = prune_dataset(graphs, RandomPruneConfig{s.p, s.seed}, s.strict);
  } else {
    AttrOptions attrs;
    if (s.attr_mode != "auto") attrs.mode = parse_attr_mode(s.attr_mode);
    attrs.order = parse_endpoint_order(s.endpoint_order);
    attrs.zscore = s.zscore;
    attrs.node_vocab = s.node_vocab;
    attrs.edge_vocab = s.edge_vocab;
    attrs.embed_seed = mix_seed(s.seed, 0x656d6264ULL);

    std::optional<LshFamily> family;
    if (!s.family_in.empty()) {
      family = read_family(s.family_in);
      if (to_string(family->variant()) != s.method) {
        throw usage_error("bad-option", "--family-in holds an " + std::string(to_string(family->variant())) +
                                            " family but --method is " + s.method);
      }
    } else {
      LshFamilyConfig cfg;
      cfg.variant = parse_lsh_variant(s.method);
      cfg.k = s.k;
      cfg.m = s.m;
      cfg.l = s.l;
      cfg.master_seed = s.seed;
      cfg.d = 1;
      // The family dimension comes from the first graph that has any edges.
      for (const Graph& g : graphs) {
        if (g.num_edges() > 0) {
          cfg.d = attr_dim(g, attrs);
          break;
        }
      }
      family.emplace(cfg);
    }
    if (!s.family_out.empty()) write_family(s.family_out, *family);
    PruneOptions opts;
    opts.threads = s.threads;
    items = prune_dataset(graphs, *family, attrs, s.strict, opts);
  }

  std::vector<Graph> pruned;
  pruned.reserve(graphs.size());
  std::size_t edges = 0;
  std::size_t kept = 0;
  double seconds = 0.0;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (items[i].result) {
      pruned.push_back(pruned_graph(graphs[i], *items[i].result));
      edges += items[i].result->stats.num_edges;
      kept += items[i].result->stats.kept_edges;
      seconds += items[i].result->stats.wall_seconds;
    } else {
      // Failed graphs pass through unpruned so the output stays aligned.
      pruned.push_back(graphs[i]);
      err << "warning: graph " << i << " not pruned: " << items[i].error << '\n';
      ++failures;
    }
  }
  write_container(s.output, pruned);
  if (!s.report.empty()) write_file(s.report, report_text(graphs, items, s.report_timing));
  if (!s.idmap.empty()) {
    std::string text = "graph_id\tindex\toriginal_id\n";
    for (const Graph& g : graphs) {
      for (NodeId u = 0; u < g.num_nodes(); ++u) {
        text += g.name() + '\t' + std::to_string(u) + '\t' + std::to_string(g.original_id(u)) + '\n';
      }
    }
    write_file(s.idmap, text);
  }
  err << "pruned " << graphs.size() - failures << "/" << graphs.size() << " graphs: kept " << kept << " of " << edges
      << " edges (" << (edges == 0 ? 1.0 : static_cast<double>(kept) / static_cast<double>(edges)) << ") in "
      << seconds << " s\n";
  return failures == 0 ? kOk : kData;
}

// ------------------------------------------------------------- generate

std::vector<KeySpec> generate_keys() {
  std::vector<KeySpec> keys = {{"output", "Output dataset container"}};
  for (const auto& [k, v] : GeneratorConfig{}.to_key_values()) {
    keys.push_back({k, "default " + v, k == "is_symmetric"});
  }
  return keys;
}

int run_generate(const KeyValues& kv, std::ostream& out, std::ostream& err) {
  GeneratorConfig cfg;
  std::string output;
  for (const auto& [k, v] : kv) {
    if (k == "output") output = v;
    else cfg.set(k, v);
  }
  if (output.empty()) throw usage_error("missing-option", "--output is required");
  cfg.validate();
  KeyValues resolved = {{"output", output}};
  for (auto& e : cfg.to_key_values()) resolved.push_back(std::move(e));
  echo(out, "generate", resolved);

  const auto samples = generate_dataset(cfg);
  std::vector<Graph> graphs;
  graphs.reserve(samples.size());
  for (const auto& s : samples) graphs.push_back(s.graph);
  write_container(output, graphs);
  err << "generated " << graphs.size() << " graphs over " << cfg.num_classes << " classes\n";
  return kOk;
}

// ---------------------------------------------------------------- stats

const std::vector<KeySpec> kStatsKeys = {
    {"input", "Input graph container"},
    {"output", "Variance-curve table (TSV); stdout when omitted"},
    {"graph", "Index of the graph to analyse"},
    {"depths", "Comma-separated neighborhood depths"},
    {"fractions", "Comma-separated kept-edge fractions in (0, 1]"},
    {"method", "random | lsp-t | lsp-p"},
    {"k_max", "Largest number of hash functions tried when matching a fraction (lsp)"},
    {"m", "Bucket count (lsp-t)"},
    {"l", "Bin width (lsp-p)"},
    {"attr_mode", "auto | node_only | node_and_edge | raw_edge (lsp)"},
    {"trials", "Trials averaged per fraction"},
    {"seed", "Master seed"},
    {"threads", "Worker threads"},
};

int run_stats(const KeyValues& kv, std::ostream& out, std::ostream& err) {
  std::map<std::string, std::string> v = {
      {"input", ""},          {"output", ""},
      {"graph", "0"},         {"depths", "1,2,3"},
      {"fractions", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1"},
      {"method", "random"},   {"k_max", "64"},
      {"m", "65536"},         {"l", "1"},
      {"attr_mode", "auto"},  {"trials", "5"},
      {"seed", "0"},          {"threads", "1"},
  };
  for (const auto& [k, val] : kv) v[k] = val;
  if (v["input"].empty()) throw usage_error("missing-option", "--input is required");

  CurvePruner pruner;
  if (v["method"] == "random") {
    pruner.method = CurvePruner::Method::kRandom;
  } else {
    pruner.method = CurvePruner::Method::kLsp;
    pruner.family.variant = parse_lsh_variant(v["method"]);
    pruner.family.m = parse_uint(v["m"], "m");
    pruner.family.l = parse_double(v["l"], "l");
    pruner.max_functions = parse_uint(v["k_max"], "k_max");
    if (v["attr_mode"] != "auto") pruner.attrs.mode = parse_attr_mode(v["attr_mode"]);
  }
  std::vector<std::size_t> depths;
  for (auto d : parse_uint_list(v["depths"], "depths")) depths.push_back(d);
  const std::vector<double> fractions = parse_double_list(v["fractions"], "fractions");
  const std::size_t trials = parse_uint(v["trials"], "trials");
  const std::uint64_t seed = parse_uint(v["seed"], "seed");
  const auto threads = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_uint(v["threads"], "threads")));
  const std::size_t index = parse_uint(v["graph"], "graph");

  KeyValues resolved;
  for (const KeySpec& spec : kStatsKeys) {
    const bool lsp_only = spec.key == "k_max" || spec.key == "m" || spec.key == "l" || spec.key == "attr_mode";
    if (lsp_only && pruner.method == CurvePruner::Method::kRandom) continue;
    if (spec.key == "output" && v["output"].empty()) continue;
    resolved.emplace_back(spec.key, v[spec.key]);
  }
  echo(err, "stats", resolved);

  const std::vector<Graph> graphs = read_container(v["input"]);
  if (index >= graphs.size()) {
    throw usage_error("out-of-range-index", "graph " + std::to_string(index) + " of " + std::to_string(graphs.size()));
  }
  const Graph& g = graphs[index];
  const auto curve = neighborhood_variance_curve(g, depths, fractions, pruner, trials, seed, threads);

  std::vector<double> degrees(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) degrees[u] = static_cast<double>(g.degree(u));

  std::string table =
      "method\ttarget_fraction\tkept_fraction\tdepth\tvariance\tfunctions\tdeterministic_scaling\tbernoulli_expected\n";
  for (const auto& p : curve) {
    table += v["method"] + '\t' + format_double(p.target_fraction) + '\t' + format_double(p.kept_fraction) + '\t' +
             std::to_string(p.depth) + '\t' + format_double(p.variance) + '\t' + std::to_string(p.functions) + '\t';
    if (p.depth == 1) {
      const double q = std::clamp(p.kept_fraction, 0.0, 1.0);
      table += format_double(variance_scaling_check(degrees, q).rhs) + '\t' +
               format_double(bernoulli_degree_variance(degrees, q));
    } else {
      table += "NA\tNA";
    }
    table += '\n';
  }
  if (v["output"].empty()) {
    out << table;
  } else {
    write_file(v["output"], table);
  }
  return kOk;
}

// -------------------------------------------------------------- compare

const std::vector<KeySpec> kCompareKeys = {
    {"input", "Original graph container"},
    {"pruned", "Pruned graph container"},
    {"pairs", "Node pairs file ('u v' per line, original ids); default: all pairs sharing a neighbor"},
    {"graph", "Index of the graph to compare"},
    {"output", "Per-pair Jaccard table (TSV); stdout when omitted"},
};

int run_compare(const KeyValues& kv, std::ostream& out, std::ostream& err) {
  std::map<std::string, std::string> v = {{"input", ""}, {"pruned", ""}, {"pairs", ""}, {"graph", "0"}, {"output", ""}};
  for (const auto& [k, val] : kv) v[k] = val;
  if (v["input"].empty() || v["pruned"].empty()) throw usage_error("missing-option", "--input and --pruned are required");
  KeyValues resolved;
  for (const KeySpec& spec : kCompareKeys) {
    if (!v[spec.key].empty()) resolved.emplace_back(spec.key, v[spec.key]);
  }
  echo(err, "compare", resolved);

  const std::size_t index = parse_uint(v["graph"], "graph");
  const auto original = read_container(v["input"]);
  const auto pruned = read_container(v["pruned"]);
  if (index >= original.size() || index >= pruned.size()) {
    throw usage_error("out-of-range-index", "graph " + std::to_string(index) + " not present in both containers");
  }
  const Graph& g = original[index];
  const Graph& h = pruned[index];
  for (NodeId u = 0; u < std::min(g.num_nodes(), h.num_nodes()); ++u) {
    if (g.original_id(u) != h.original_id(u)) throw data_error("node-set-mismatch", "node order differs at index " + std::to_string(u));
  }

  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (v["pairs"].empty()) {
    pairs = pairs_with_common_neighbor(g);
  } else {
    std::map<std::int64_t, NodeId> index_of;
    for (NodeId u = 0; u < g.num_nodes(); ++u) index_of[g.original_id(u)] = u;
    std::istringstream in(read_file(v["pairs"]));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      const auto t = split_ws(trim(line));
      if (t.empty() || t[0].front() == '#') continue;
      const auto where = v["pairs"] + ":" + std::to_string(n);
      if (t.size() != 2) throw data_error("syntax", where + ": expected 'u v'");
      NodeId ends[2];
      for (int j = 0; j < 2; ++j) {
        const auto it = index_of.find(parse_int(t[j], "node id"));
        if (it == index_of.end()) throw data_error("out-of-range-index", where + ": unknown node " + std::string(t[j]));
        ends[j] = it->second;
      }
      pairs.emplace_back(ends[0], ends[1]);
    }
  }

  const auto result = jaccard_locality(g, h, pairs);
  std::string table = "u\tv\tjaccard_before\tjaccard_after\n";
  double before = 0.0;
  double after = 0.0;
  for (const auto& r : result) {
    table += std::to_string(g.original_id(r.u)) + '\t' + std::to_string(g.original_id(r.v)) + '\t' +
             format_double(r.before) + '\t' + format_double(r.after) + '\n';
    before += r.before;
    after += r.after;
  }
  if (v["output"].empty()) {
    out << table;
  } else {
    write_file(v["output"], table);
  }
  if (!result.empty()) {
    err << "compared " << result.size() << " pairs: mean jaccard " << before / static_cast<double>(result.size())
        << " -> " << after / static_cast<double>(result.size()) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locality-sensitive edge pruning toolkit", "lsp"};
  app.require_subcommand(1);

  CLI::App* prune = app.add_subcommand("prune", "Sparsify every graph in a container");
  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic graph-classification dataset");
  CLI::App* stats = app.add_subcommand("stats", "Neighborhood-size variance versus kept-edge fraction");
  CLI::App* compare = app.add_subcommand("compare", "Per-pair neighborhood Jaccard before and after pruning");

  RawOptions prune_opts(prune, kPruneKeys);
  RawOptions generate_opts(generate, generate_keys());
  RawOptions stats_opts(stats, kStatsKeys);
  RawOptions compare_opts(compare, kCompareKeys);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* shown = &app;
    for (const CLI::App* sub : {prune, generate, stats, compare})
      if (sub->parsed()) shown = sub;
    out << shown->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (prune->parsed()) {
      PruneSettings s;
      for (const auto& [k, v] : prune_opts.collect()) s.set(k, v);
      return run_prune(s, out, err);
    }
    if (generate->parsed()) return run_generate(generate_opts.collect(), out, err);
    if (stats->parsed()) return run_stats(stats_opts.collect(), out, err);
    if (compare->parsed()) return run_compare(compare_opts.collect(), out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kUsage: return kUsage;
      case ErrorKind::kData: return kData;
      case ErrorKind::kInternal: return kInternal;
    }
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace lsp::cli
