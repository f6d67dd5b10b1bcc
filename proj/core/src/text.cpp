#include "lsp/text.hpp"

#include <charconv>
#include <cmath>

#include "lsp/common.hpp"

namespace lsp {
namespace {

Error bad_value(std::string_view text, std::string_view what, const char* expected) {
  return usage_error("bad-value", std::string(what) + ": '" + std::string(text) + "' is not " + expected);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what, const char* expected) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) throw bad_value(text, what, expected);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_uint(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  return parse_number<std::uint64_t>(text, what, "an unsigned integer");
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  return parse_number<std::int64_t>(text, what, "an integer");
}

double parse_double(std::string_view text, std::string_view what) {
  // from_chars rejects a leading '+'; accept it for hand-written configs.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  return parse_number<double>(text, what, "a number");
}

bool parse_bool(std::string_view text, std::string_view what) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw bad_value(text, what, "a boolean (true/false)");
}

std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

namespace {

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view text, std::string_view what, Parse parse) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse(trim(text.substr(pos, comma - pos)), what));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
  return parse_list<double>(text, what, parse_double);
}

std::vector<std::uint64_t> parse_uint_list(std::string_view text, std::string_view what) {
  return parse_list<std::uint64_t>(text, what, parse_uint);
}

}  // namespace lsp
