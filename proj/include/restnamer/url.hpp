// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restnamer/errors.hpp"
#include "restnamer/model.hpp"
#include "restnamer/path.hpp"

namespace restnamer {

struct ParsedUrl {
  std::string path;
  std::vector<QueryParam> query;

  bool operator==(const ParsedUrl&) const = default;
};

namespace url_detail {

inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace url_detail

/// Decodes %XX escapes. Invalid escapes are kept literally; '+' is not a space.
inline std::string percent_decode(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '%' && i + 2 < in.size()) {
      int hi = url_detail::hex_value(in[i + 1]);
      int lo = url_detail::hex_value(in[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
        continue;
      }
    }
    out += in[i];
  }
  return out;
}

/// Escapes everything outside the RFC 3986 unreserved set plus a few safe sub-delims.
inline std::string percent_encode(std::string_view in) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : in) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == '!' || c == '*' || c == '(' ||
        c == ')' || c == ',' || c == ';' || c == ':' || c == '@' || c == '/' || c == '$' || c == '\'') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

/// Splits a request URL into path and decoded query parameters.
/// The path is everything before the first '?'; a '#' fragment is dropped.
inline ParsedUrl parse_url(std::string_view raw) {
  if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
  auto qmark = raw.find('?');
  auto path = raw.substr(0, qmark);
  if (path.empty()) throw MalformedUrl("empty path in URL \"" + std::string(raw) + "\"");
  if (path.front() != '/') throw MalformedUrl("path must begin with '/' in URL \"" + std::string(raw) + "\"");

  ParsedUrl out{std::string(path), {}};
  if (qmark == std::string_view::npos) return out;

  auto query = raw.substr(qmark + 1);
  std::size_t start = 0;
  while (start <= query.size()) {
    auto amp = query.find('&', start);
    auto pair = query.substr(start, amp == std::string_view::npos ? std::string_view::npos : amp - start);
    if (!pair.empty()) {
      auto eq = pair.find('=');
      std::string name = percent_decode(pair.substr(0, eq));
      std::string value = eq == std::string_view::npos ? std::string{} : percent_decode(pair.substr(eq + 1));
      if (name.empty()) throw MalformedUrl("empty query parameter name in URL \"" + std::string(raw) + "\"");
      if (name.find_first_of("=&?") != std::string::npos) {
        throw MalformedUrl("query parameter name \"" + name + "\" contains a reserved character");
      }
      out.query.push_back({std::move(name), std::move(value)});
    }
    if (amp == std::string_view::npos) break;
    start = amp + 1;
  }
  return out;
}

/// Inverse of parse_url for well-formed inputs: parse_url(serialize_url(p, q)) == {p, q}.
inline std::string serialize_url(std::string_view path, const std::vector<QueryParam>& query) {
  std::string out(path);
  for (std::size_t i = 0; i < query.size(); ++i) {
    out += i == 0 ? '?' : '&';
    out += percent_encode(query[i].name);
    out += '=';
    out += percent_encode(query[i].value);
  }
  return out;
}

/// Best template for a concrete path: equal segment count, exact static segments,
/// most static segments wins, ties broken lexicographically.
inline std::optional<std::string> match_template(std::string_view path, const std::vector<std::string>& templates) {
  std::optional<std::string> best;
  std::size_t best_static = 0;
  for (const auto& tmpl : templates) {
    if (!template_matches(tmpl, path)) continue;
    auto segs = split_segments(tmpl);
    auto statics = static_cast<std::size_t>(
        std::count_if(segs.begin(), segs.end(), [](const std::string& s) { return !is_placeholder(s); }));
    if (!best || statics > best_static || (statics == best_static && tmpl < *best)) {
      best = tmpl;
      best_static = statics;
    }
  }
  return best;
}

namespace url_detail {

inline bool is_signed_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// 8-4-4-4-12 hex digits.
inline bool is_uuid(std::string_view s) {
  if (s.size() != 36) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == 8 || i == 13 || i == 18 || i == 23) {
      if (s[i] != '-') return false;
    } else if (!std::isxdigit(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace url_detail

/// Fallback templating: numeric and UUID segments become `{p<i>}`, i being the segment position.
inline std::string infer_param_segments(std::string_view path) {
  auto segs = split_segments(path);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (url_detail::is_signed_integer(segs[i]) || url_detail::is_uuid(segs[i])) segs[i] = "{p" + std::to_string(i) + "}";
  }
  return join_segments(segs);
}

/// The call's own template, else the best supplied template, else the inferred one.
inline std::string resolve_template(const HttpCall& call, const std::optional<std::vector<std::string>>& templates) {
  if (call.path_template) return *call.path_template;
  if (templates) {
    if (auto t = match_template(call.path, *templates)) return *t;
  }
  return infer_param_segments(call.path);
}

}  // namespace restnamer
