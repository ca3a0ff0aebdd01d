#pragma once

// Line-oriented helpers shared by the .dodg and .3dm readers.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace dodgson::text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Calls `fn(line_number, content)` for each line with comments stripped and
/// whitespace trimmed; blank results are skipped.
template <typename Fn>
void for_each_content_line(std::string_view doc, Fn&& fn) {
  std::size_t line_no = 0;
  while (!doc.empty()) {
    ++line_no;
    auto nl = doc.find('\n');
    auto line = doc.substr(0, nl);
    doc = nl == std::string_view::npos ? std::string_view{} : doc.substr(nl + 1);
    auto content = trim(strip_comment(line));
    if (!content.empty()) fn(line_no, content);
  }
}

}  // namespace dodgson::text
