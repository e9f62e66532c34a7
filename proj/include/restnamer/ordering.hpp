// SPDX-License-Identifier: Apache-2.0
#pragma once

// Textual ordering of tests inside a suite: general paths before specific
// ones, then 5xx / 2xx / 4xx / other, then GET POST PUT DELETE OPTIONS PATCH
// TRACE HEAD, then creation order.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "restnamer/model.hpp"
#include "restnamer/naming.hpp"
#include "restnamer/url.hpp"

namespace restnamer {

inline constexpr std::string_view kPlaceholderToken = "{}";

struct OrderKey {
  std::vector<std::string> path_rank;  // placeholders normalized to "{}"
  int status_group = 3;
  int verb_rank = 0;
  std::uint64_t tie_rank = 0;

  bool operator==(const OrderKey&) const = default;
};

/// 0 for 5xx, 1 for 2xx, 2 for 4xx, 3 for everything else including no status.
inline int status_group(const std::optional<int>& status) {
  if (!status) return 3;
  switch (*status / 100) {
    case 5: return 0;
    case 2: return 1;
    case 4: return 2;
    default: return 3;
  }
}

inline int verb_rank(HttpVerb verb) { return static_cast<int>(verb); }

/// Static segments sort lexicographically and before placeholders at the same depth.
inline std::strong_ordering compare_segment(const std::string& a, const std::string& b) {
  bool pa = a == kPlaceholderToken, pb = b == kPlaceholderToken;
  if (pa != pb) return pa ? std::strong_ordering::greater : std::strong_ordering::less;
  return a <=> b;
}

/// Segment-wise comparison; a strict prefix precedes its extensions.
inline std::strong_ordering compare_path_rank(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare_segment(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

inline std::strong_ordering operator<=>(const OrderKey& a, const OrderKey& b) {
  if (auto c = compare_path_rank(a.path_rank, b.path_rank); c != 0) return c;
  if (auto c = a.status_group <=> b.status_group; c != 0) return c;
  if (auto c = a.verb_rank <=> b.verb_rank; c != 0) return c;
  return a.tie_rank <=> b.tie_rank;
}

inline OrderKey order_key(const TestCase& test, const std::optional<std::vector<std::string>>& templates = std::nullopt) {
  const auto& call = focal_call(test);
  OrderKey key;
  for (auto& seg : split_segments(resolve_template(call, templates))) {
    key.path_rank.push_back(is_placeholder(seg) ? std::string(kPlaceholderToken) : std::move(seg));
  }
  key.status_group = status_group(call.expected_status);
  key.verb_rank = verb_rank(call.verb);
  key.tie_rank = test.creation_index;
  return key;
}

/// Returns a new suite with tests in ordering-key order; equal keys keep their relative order.
inline TestSuite sort_suite(const TestSuite& suite) {
  std::vector<OrderKey> keys;
  keys.reserve(suite.tests.size());
  for (const auto& t : suite.tests) keys.push_back(order_key(t, suite.templates));

  std::vector<std::size_t> order(suite.tests.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  TestSuite out = suite;
  out.tests.clear();
  for (auto i : order) out.tests.push_back(suite.tests[i]);
  return out;
}

}  // namespace restnamer
