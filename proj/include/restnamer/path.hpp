// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace restnamer {

// "/" -> {}, "/a/b" -> {"a","b"}, "/a//b/" -> {"a","","b",""}.
inline std::vector<std::string> split_segments(std::string_view path) {
  std::vector<std::string> out;
  if (path.empty() || path == "/") return out;
  if (path.front() == '/') path.remove_prefix(1);
  std::size_t start = 0;
  while (true) {
    auto slash = path.find('/', start);
    if (slash == std::string_view::npos) {
      out.emplace_back(path.substr(start));
      break;
    }
    out.emplace_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return out;
}

/// True for a whole-segment `{name}` placeholder.
inline bool is_placeholder(std::string_view segment) {
  return segment.size() >= 2 && segment.front() == '{' && segment.back() == '}' &&
         segment.find_first_of("{}/", 1) == segment.size() - 1;
}

inline std::string join_segments(const std::vector<std::string>& segments) {
  if (segments.empty()) return "/";
  std::string out;
  for (const auto& s : segments) {
    out += '/';
    out += s;
  }
  return out;
}

/// Well-formed template: leading '/', braces only as whole-segment placeholders.
inline bool is_well_formed_template(std::string_view tmpl) {
  if (tmpl.empty() || tmpl.front() != '/') return false;
  if (tmpl.find_first_of("?#") != std::string_view::npos) return false;
  for (const auto& seg : split_segments(tmpl)) {
    if (is_placeholder(seg)) continue;
    if (seg.find_first_of("{}") != std::string::npos) return false;
  }
  return true;
}

/// Positional equality of static segments; placeholders match anything.
inline bool template_matches(std::string_view tmpl, std::string_view path) {
  auto t = split_segments(tmpl);
  auto p = split_segments(path);
  if (t.size() != p.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!is_placeholder(t[i]) && t[i] != p[i]) return false;
  }
  return true;
}

}  // namespace restnamer
