#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsp/graph.hpp"
#include "lsp/lsh.hpp"

namespace lsp {

// Graph container format (UTF-8, line oriented, '#' starts a comment line):
//
//   lspg 1
//   G <graph_id> [label=<int>]
//   N <num_nodes> <node_dim>
//   M <num_edges> <edge_dim>
//   node <id> <f1> ... <f_node_dim>        (num_nodes lines)
//   edge <u> <v> <f1> ... <f_edge_dim>     (num_edges lines)
//   nodelabel <id> <int>                   (optional, any number)
//   loop <id>                              (optional, any number)
//
// Node ids are arbitrary integers, remapped to dense indices in line order;
// the original ids are kept on the Graph and written back out. Floats use
// the shortest representation that round-trips exactly.

std::vector<Graph> parse_container(std::istream& in, std::string_view source = "<input>");
std::vector<Graph> parse_container_text(std::string_view text, std::string_view source = "<input>");
std::vector<Graph> read_container(const std::string& path);

void write_container(std::ostream& out, std::span<const Graph> graphs);
std::string container_text(std::span<const Graph> graphs);
void write_container(const std::string& path, std::span<const Graph> graphs);

// LSH family sidecar, same line conventions:
//
//   lspf 1
//   family <lsp-t|lsp-p> k <k> d <d> m <m> l <l> seed <seed>
//   fn <i> [b_i] <w_1> ... <w_d>           (k lines; b_i only for lsp-p)

void write_family(std::ostream& out, const LshFamily& family);
void write_family(const std::string& path, const LshFamily& family);
LshFamily parse_family(std::istream& in, std::string_view source = "<input>");
LshFamily read_family(const std::string& path);

/// Flat `key = value` text; '#' comment lines and blank lines ignored.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues parse_key_values(std::istream& in, std::string_view source = "<input>");
KeyValues read_key_values(const std::string& path);
std::string key_values_text(const KeyValues& kv);

/// Whole-file helpers; failures are data errors naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace lsp
