#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lsp {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);
std::string format_uint(std::uint64_t v);

/// Strict whole-token parsers; failures throw usage errors mentioning `what`.
std::uint64_t parse_uint(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

/// Comma-separated list of doubles / unsigned integers.
std::vector<double> parse_double_list(std::string_view text, std::string_view what);
std::vector<std::uint64_t> parse_uint_list(std::string_view text, std::string_view what);

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split_ws(std::string_view line);

}  // namespace lsp
