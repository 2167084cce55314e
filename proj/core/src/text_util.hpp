#pragma once

#include <charconv>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "dtutte/types.hpp"

namespace dtutte::text {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

[[noreturn]] inline void fail(int lineno, const std::string& what) {
  throw StructuralError("line " + std::to_string(lineno) + ": " + what);
}

inline long long parse_int(std::string_view s, int lineno) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(lineno, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

// Value of a `key=value` token; fails when the key does not match.
inline std::string_view value_of(std::string_view tok, std::string_view key, int lineno) {
  if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
    fail(lineno, "expected " + std::string(key) + "=..., got '" + std::string(tok) + "'");
  return tok.substr(key.size() + 1);
}

// Comma separated integers; "-" or "" is the empty list.
inline std::vector<long long> parse_int_list(std::string_view s, int lineno) {
  std::vector<long long> out;
  if (s.empty() || s == "-") return out;
  size_t i = 0;
  while (true) {
    size_t j = s.find(',', i);
    out.push_back(parse_int(s.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i), lineno));
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
  return out;
}

template <class Seq>
std::string join_ints(const Seq& seq) {
  if (seq.empty()) return "-";
  std::string s;
  for (auto x : seq) {
    if (!s.empty()) s += ',';
    s += std::to_string(x);
  }
  return s;
}

// Reads non-empty, comment-stripped lines with their 1-based numbers.
struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  bool next(Line& out) {
    while (std::getline(in_, buf_)) {
      ++lineno_;
      auto toks = split_ws(strip_comment(buf_));
      if (toks.empty()) continue;
      out = {lineno_, std::move(toks)};
      return true;
    }
    return false;
  }

 private:
  std::istream& in_;
  std::string buf_;
  int lineno_ = 0;
};

}  // namespace dtutte::text
