#include "lsp/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lsp/text.hpp"

namespace lsp {
namespace {

class LineReader {
 public:
  LineReader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  // Next non-blank, non-comment line split on whitespace; false at EOF.
  bool next(std::vector<std::string_view>& tokens) {
    while (pos_ < text_.size()) {
      const std::size_t nl = std::min(text_.find('\n', pos_), text_.size());
      const std::string_view line = text_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
      ++line_;
      const std::string_view t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      tokens = split_ws(t);
      return true;
    }
    return false;
  }

  // Peek without consuming.
  bool peek(std::vector<std::string_view>& tokens) {
    const std::size_t pos = pos_;
    const std::size_t line = line_;
    const bool ok = next(tokens);
    pos_ = pos;
    line_ = line;
    return ok;
  }

  Error error(std::string category, const std::string& detail) const {
    return data_error(std::move(category), std::string(source_) + ":" + std::to_string(line_) + ": " + detail);
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::string_view text_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

template <typename Fn>
auto at_line(const LineReader& r, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInternal) throw;
    throw r.error("syntax", e.what());
  }
}

void expect_arity(const LineReader& r, const std::vector<std::string_view>& t, std::size_t n, const char* what) {
  if (t.size() != n) {
    throw r.error("syntax", std::string(what) + " line needs " + std::to_string(n) + " fields, got " +
                                std::to_string(t.size()));
  }
}

Graph parse_block(LineReader& r, const std::vector<std::string_view>& header) {
  Graph::Parts parts;
  if (header.size() < 2 || header.size() > 3) throw r.error("syntax", "expected 'G <graph_id> [label=<int>]'");
  parts.name = std::string(header[1]);
  if (header.size() == 3) {
    if (header[2].substr(0, 6) != "label=") throw r.error("syntax", "expected 'label=<int>'");
    parts.graph_label = at_line(r, [&] { return parse_int(header[2].substr(6), "graph label"); });
  }

  std::vector<std::string_view> t;
  if (!r.next(t) || t[0] != "N") throw r.error("syntax", "expected 'N <num_nodes> <node_dim>'");
  expect_arity(r, t, 3, "N");
  const std::uint64_t n = at_line(r, [&] { return parse_uint(t[1], "num_nodes"); });
  const std::uint64_t q = at_line(r, [&] { return parse_uint(t[2], "node_dim"); });
  if (n >= kNoNode) throw r.error("graph-too-large", std::to_string(n) + " nodes");

  if (!r.next(t) || t[0] != "M") throw r.error("syntax", "expected 'M <num_edges> <edge_dim>'");
  expect_arity(r, t, 3, "M");
  const std::uint64_t m = at_line(r, [&] { return parse_uint(t[1], "num_edges"); });
  const std::uint64_t de = at_line(r, [&] { return parse_uint(t[2], "edge_dim"); });
  if (m >= kNoEdge) throw r.error("graph-too-large", std::to_string(m) + " edges");

  parts.num_nodes = n;
  parts.node_attrs = Matrix(n, q);
  parts.edge_attrs = Matrix(m, de);
  parts.original_ids.reserve(n);
  std::unordered_map<std::int64_t, NodeId> index;
  index.reserve(n);

  const auto count_error = [&](const char* what, std::uint64_t want, std::uint64_t got) {
    return r.error("count-mismatch", std::string("graph '") + parts.name + "' declares " + std::to_string(want) + " " +
                                         what + " lines, found " + std::to_string(got));
  };

  for (std::uint64_t i = 0; i < n; ++i) {
    if (!r.next(t) || t[0] != "node") throw count_error("node", n, i);
    expect_arity(r, t, 2 + q, "node");
    const std::int64_t id = at_line(r, [&] { return parse_int(t[1], "node id"); });
    if (!index.emplace(id, static_cast<NodeId>(i)).second) {
      throw r.error("duplicate-node", "node id " + std::to_string(id) + " declared twice");
    }
    parts.original_ids.push_back(id);
    for (std::uint64_t c = 0; c < q; ++c) {
      parts.node_attrs(i, c) = at_line(r, [&] { return parse_double(t[2 + c], "node attribute"); });
    }
  }

  const auto lookup = [&](std::string_view tok) {
    const std::int64_t id = at_line(r, [&] { return parse_int(tok, "node id"); });
    const auto it = index.find(id);
    if (it == index.end()) {
      throw r.error("out-of-range-index", "node id " + std::to_string(id) + " not declared (N " + std::to_string(n) + ")");
    }
    return it->second;
  };

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  parts.edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!r.next(t) || t[0] != "edge") throw count_error("edge", m, i);
    expect_arity(r, t, 3 + de, "edge");
    const NodeId a = lookup(t[1]);
    const NodeId b = lookup(t[2]);
    if (a == b) throw r.error("self-loop-in-edges", "edge " + std::string(t[1]) + " " + std::string(t[2]) + "; use a 'loop' line");
    const Edge e = canonical(a, b);
    if (!seen.insert((std::uint64_t{e.u} << 32) | e.v).second) {
      throw r.error("duplicate-edge", "edge " + std::string(t[1]) + " " + std::string(t[2]) + " repeated");
    }
    parts.edges.push_back(e);
    for (std::uint64_t c = 0; c < de; ++c) {
      parts.edge_attrs(i, c) = at_line(r, [&] { return parse_double(t[3 + c], "edge attribute"); });
    }
  }

  std::unordered_set<NodeId> loops;
  while (r.peek(t) && (t[0] == "nodelabel" || t[0] == "loop")) {
    r.next(t);
    if (t[0] == "nodelabel") {
      expect_arity(r, t, 3, "nodelabel");
      const NodeId u = lookup(t[1]);
      if (parts.node_labels.empty()) parts.node_labels.resize(n);
      if (parts.node_labels[u]) throw r.error("duplicate-label", "node " + std::string(t[1]) + " labelled twice");
      parts.node_labels[u] = at_line(r, [&] { return parse_int(t[2], "node label"); });
    } else {
      expect_arity(r, t, 2, "loop");
      const NodeId u = lookup(t[1]);
      if (!loops.insert(u).second) throw r.error("duplicate-edge", "loop at node " + std::string(t[1]) + " repeated");
      parts.self_loops.push_back(u);
    }
  }
  if (r.peek(t) && t[0] != "G") {
    if (t[0] == "node" || t[0] == "edge") {
      r.next(t);
      throw r.error("count-mismatch", "extra '" + std::string(t[0]) + "' line in graph '" + parts.name + "'");
    }
    r.next(t);
    throw r.error("syntax", "unexpected '" + std::string(t[0]) + "'");
  }

  try {
    return Graph::create(std::move(parts));
  } catch (const Error& e) {
    throw r.error(e.category(), e.what());
  }
}

void write_row(std::string& out, std::span<const double> row) {
  for (double v : row) {
    out += ' ';
    out += format_double(v);
  }
}

}  // namespace

std::vector<Graph> parse_container_text(std::string_view text, std::string_view source) {
  LineReader r(text, source);
  std::vector<std::string_view> t;
  if (!r.next(t) || t.size() != 2 || t[0] != "lspg") throw r.error("magic-mismatch", "expected 'lspg 1' header");
  if (t[1] != "1") throw r.error("magic-mismatch", "unsupported container version " + std::string(t[1]));
  std::vector<Graph> graphs;
  while (r.next(t)) {
    if (t[0] != "G") throw r.error("syntax", "expected 'G <graph_id>', got '" + std::string(t[0]) + "'");
    graphs.push_back(parse_block(r, t));
  }
  return graphs;
}

std::vector<Graph> parse_container(std::istream& in, std::string_view source) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_container_text(ss.str(), source);
}

std::vector<Graph> read_container(const std::string& path) { return parse_container_text(read_file(path), path); }

std::string container_text(std::span<const Graph> graphs) {
  std::string out = "lspg 1\n";
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    out += "G ";
    out += g.name().empty() ? "graph_" + std::to_string(gi) : g.name();
    if (g.graph_label()) out += " label=" + std::to_string(*g.graph_label());
    out += "\nN " + std::to_string(g.num_nodes()) + ' ' + std::to_string(g.node_dim());
    out += "\nM " + std::to_string(g.num_edges()) + ' ' + std::to_string(g.edge_dim()) + '\n';
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      out += "node " + std::to_string(g.original_id(u));
      write_row(out, g.node_attrs().row(u));
      out += '\n';
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      out += "edge " + std::to_string(g.original_id(g.edge(e).u)) + ' ' + std::to_string(g.original_id(g.edge(e).v));
      write_row(out, g.edge_attrs().row(e));
      out += '\n';
    }
    const auto& labels = g.node_labels();
    for (NodeId u = 0; u < labels.size(); ++u) {
      if (labels[u]) out += "nodelabel " + std::to_string(g.original_id(u)) + ' ' + std::to_string(*labels[u]) + '\n';
    }
    for (NodeId u : g.self_loops()) out += "loop " + std::to_string(g.original_id(u)) + '\n';
  }
  return out;
}

void write_container(std::ostream& out, std::span<const Graph> graphs) { out << container_text(graphs); }

void write_container(const std::string& path, std::span<const Graph> graphs) {
  write_file(path, container_text(graphs));
}

void write_family(std::ostream& out, const LshFamily& family) {
  const LshFamilyConfig& c = family.config();
  std::string s = "lspf 1\nfamily " + std::string(to_string(c.variant)) + " k " + std::to_string(c.k) + " d " +
                  std::to_string(c.d) + " m " + std::to_string(c.m) + " l " + format_double(c.l) + " seed " +
                  std::to_string(c.master_seed) + '\n';
  for (std::size_t i = 0; i < family.size(); ++i) {
    s += "fn " + std::to_string(i);
    if (c.variant == LshVariant::kProjection) s += ' ' + format_double(family.offset(i));
    write_row(s, family.weights(i));
    s += '\n';
  }
  out << s;
}

void write_family(const std::string& path, const LshFamily& family) {
  std::ostringstream ss;
  write_family(ss, family);
  write_file(path, ss.str());
}

LshFamily parse_family(std::istream& in, std::string_view source) {
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  LineReader r(text, source);
  std::vector<std::string_view> t;
  if (!r.next(t) || t.size() != 2 || t[0] != "lspf" || t[1] != "1") {
    throw r.error("magic-mismatch", "expected 'lspf 1' header");
  }
  if (!r.next(t) || t.size() != 12 || t[0] != "family" || t[2] != "k" || t[4] != "d" || t[6] != "m" || t[8] != "l" ||
      t[10] != "seed") {
    throw r.error("syntax", "expected 'family <variant> k <k> d <d> m <m> l <l> seed <seed>'");
  }
  LshFamilyConfig c;
  at_line(r, [&] {
    c.variant = parse_lsh_variant(t[1]);
    c.k = parse_uint(t[3], "k");
    c.d = parse_uint(t[5], "d");
    c.m = parse_uint(t[7], "m");
    c.l = parse_double(t[9], "l");
    c.master_seed = parse_uint(t[11], "seed");
    c.validate();
    return 0;
  });
  const bool proj = c.variant == LshVariant::kProjection;
  Matrix w(c.k, c.d);
  std::vector<double> b(proj ? c.k : 0);
  for (std::size_t i = 0; i < c.k; ++i) {
    if (!r.next(t) || t[0] != "fn") throw r.error("count-mismatch", "expected " + std::to_string(c.k) + " fn lines");
    expect_arity(r, t, 2 + (proj ? 1 : 0) + c.d, "fn");
    at_line(r, [&] {
      if (parse_uint(t[1], "function index") != i) throw usage_error("syntax", "fn lines must be in index order");
      std::size_t col = 2;
      if (proj) b[i] = parse_double(t[col++], "offset");
      for (std::size_t j = 0; j < c.d; ++j) w(i, j) = parse_double(t[col++], "weight");
      return 0;
    });
  }
  if (r.next(t)) throw r.error("count-mismatch", "trailing content after " + std::to_string(c.k) + " fn lines");
  return LshFamily(c, std::move(w), std::move(b));
}

LshFamily read_family(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_family(in, path);
}

KeyValues parse_key_values(std::istream& in, std::string_view source) {
  KeyValues kv;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw data_error("syntax", std::string(source) + ":" + std::to_string(n) + ": expected 'key = value'");
    }
    const std::string key(trim(t.substr(0, eq)));
    if (key.empty()) throw data_error("syntax", std::string(source) + ":" + std::to_string(n) + ": empty key");
    kv.emplace_back(key, std::string(trim(t.substr(eq + 1))));
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_key_values(in, path);
}

std::string key_values_text(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + '\n';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("io", "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw data_error("io", "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw data_error("io", "write to '" + path + "' failed");
}

}  // namespace lsp
