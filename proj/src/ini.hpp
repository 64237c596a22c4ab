#pragma once

// Line-oriented "[section]" text shared by the model, bundle and plan files.
// '#' starts a comment; blank lines are ignored.

#include <string>
#include <string_view>
#include <vector>

#include "amc/error.hpp"

namespace amc::ini {

struct Line {
  std::string_view text;  // trimmed, comment removed
  int number;
  int column;  // 1-based column of text[0] in the source line
};

struct Section {
  std::string name;
  int line;
  std::vector<Line> lines;
};

inline std::string_view trim(std::string_view s, int* lead = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (lead) *lead = static_cast<int>(b);
  return s.substr(b, e - b);
}

// The views point into text, which must outlive the result.
inline std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    int lead = 0;
    std::string_view s = trim(raw, &lead);
    if (s.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", number, lead + 1);
      out.push_back({std::string(trim(s.substr(1, s.size() - 2))), number, {}});
    } else {
      if (out.empty()) throw ParseError("content before the first section header", number, lead + 1);
      out.back().lines.push_back({s, number, lead + 1});
    }
    if (end == text.size()) break;
  }
  return out;
}

// Splits "key = value" at the first '='.
inline bool split_assignment(const Line& l, std::string_view& key, std::string_view& value) {
  auto eq = l.text.find('=');
  if (eq == std::string_view::npos) return false;
  key = trim(l.text.substr(0, eq));
  value = trim(l.text.substr(eq + 1));
  return true;
}

}  // namespace amc::ini
