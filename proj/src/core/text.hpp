#pragma once

// Line tokenizer shared by the graph and election file loaders.

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace mwec {

inline std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == '\f'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != '\f')
      ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Calls fn(line_number, tokens) for every line that is neither blank nor a
// `#` comment. Line numbers are 1-based.
template <typename Fn>
void for_each_content_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    auto tokens = split_whitespace(line);
    if (!tokens.empty() && tokens[0].front() != '#') fn(line_no, tokens);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

inline std::size_t parse_index(std::string_view tok, std::size_t line_no,
                               const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line_no, std::string("malformed ") + what + " '" +
                                  std::string(tok) + "'");
  return value;
}

}  // namespace mwec
