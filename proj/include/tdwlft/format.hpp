#pragma once

// Text helpers shared by the tensor and checkpoint formats.

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tdwlft/error.hpp"

namespace tdwlft {

/// Shortest decimal representation that parses back to exactly x.
inline std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

/// Splits on spaces and tabs, dropping anything after '#'.
inline std::vector<Token> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    out.push_back({line.substr(start, pos - start), start + 1});
  }
  return out;
}

inline std::size_t parse_count(const Token& tok, std::size_t line) {
  std::size_t v = 0;
  const auto* first = tok.text.data();
  const auto* last = first + tok.text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError(line, tok.column,
                     "expected a nonnegative integer, got '" + std::string(tok.text) + "'");
  }
  return v;
}

inline double parse_real(const Token& tok, std::size_t line) {
  double v = 0.0;
  const auto* first = tok.text.data();
  const auto* last = first + tok.text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError(line, tok.column, "expected a real number, got '" + std::string(tok.text) + "'");
  }
  return v;
}

}  // namespace tdwlft
