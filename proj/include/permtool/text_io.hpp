#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "permtool/errors.hpp"
#include "permtool/value.hpp"

namespace permtool {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    const std::size_t s = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    if (k > s) out.push_back(line.substr(s, k - s));
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end) throw parse_error(line, "not a non-negative integer: '" + std::string(tok) + "'");
  return v;
}

// Next line holding at least one token; blank lines are skipped.
inline bool next_content_line(std::istream& in, std::string& buf, std::size_t& line) {
  while (std::getline(in, buf)) {
    ++line;
    if (!split_ws(buf).empty()) return true;
  }
  return false;
}

}  // namespace detail

// Line 1: n. Line 2: pi(1) .. pi(n), 1-based. Must describe a permutation.
inline std::vector<element_t> read_permutation(std::istream& in) {
  std::string buf;
  std::size_t line = 0;
  if (!detail::next_content_line(in, buf, line)) throw parse_error(line + 1, "missing element count");
  const auto head = detail::split_ws(buf);
  if (head.size() != 1) throw parse_error(line, "first line must hold n alone");
  const auto n = detail::parse_uint(head[0], line);
  if (n == 0 || n > 0xfffffffeULL) throw parse_error(line, "n out of range");
  if (!detail::next_content_line(in, buf, line)) throw parse_error(line + 1, "missing permutation values");
  const auto toks = detail::split_ws(buf);
  if (toks.size() != n) {
    throw parse_error(line, "expected " + std::to_string(n) + " values, found " + std::to_string(toks.size()));
  }
  std::vector<element_t> out(n);
  std::vector<bool> seen(n + 1, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = detail::parse_uint(toks[k], line);
    if (v < 1 || v > n) throw parse_error(line, "value " + std::to_string(v) + " outside [1, n]");
    if (seen[v]) throw parse_error(line, "value " + std::to_string(v) + " repeated");
    seen[v] = true;
    out[k] = static_cast<element_t>(v);
  }
  std::string rest;
  if (detail::next_content_line(in, rest, line)) throw parse_error(line, "unexpected trailing content");
  return out;
}

inline void write_permutation(std::ostream& out, const std::vector<element_t>& perm) {
  out << perm.size() << '\n';
  for (std::size_t k = 0; k < perm.size(); ++k) out << (k ? " " : "") << perm[k];
  out << '\n';
}

// One line of whitespace-separated opaque tokens.
inline std::vector<std::string> read_array(std::istream& in) {
  std::string buf;
  std::size_t line = 0;
  if (!detail::next_content_line(in, buf, line)) throw parse_error(line + 1, "missing array line");
  std::vector<std::string> out;
  for (auto tok : detail::split_ws(buf)) out.emplace_back(tok);
  std::string rest;
  if (detail::next_content_line(in, rest, line)) throw parse_error(line, "array must be a single line");
  return out;
}

inline void write_array(std::ostream& out, const std::vector<std::string>& a) {
  for (std::size_t k = 0; k < a.size(); ++k) out << (k ? " " : "") << a[k];
  out << '\n';
}

}  // namespace permtool
