// SPDX-License-Identifier: Apache-2.0
#pragma once

// Intermediate representation of a generated REST test suite. All types are
// plain values; transformations return new suites instead of mutating.

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "restnamer/path.hpp"

namespace restnamer {

enum class HttpVerb { Get, Post, Put, Delete, Options, Patch, Trace, Head };

inline constexpr std::array<HttpVerb, 8> kAllVerbs = {HttpVerb::Get,     HttpVerb::Post,  HttpVerb::Put,
                                                      HttpVerb::Delete,  HttpVerb::Options, HttpVerb::Patch,
                                                      HttpVerb::Trace,   HttpVerb::Head};

inline std::string_view to_string(HttpVerb verb) {
  switch (verb) {
    case HttpVerb::Get: return "GET";
    case HttpVerb::Post: return "POST";
    case HttpVerb::Put: return "PUT";
    case HttpVerb::Delete: return "DELETE";
    case HttpVerb::Options: return "OPTIONS";
    case HttpVerb::Patch: return "PATCH";
    case HttpVerb::Trace: return "TRACE";
    case HttpVerb::Head: return "HEAD";
  }
  return "GET";
}

/// Case-insensitive lookup; anything but the eight verbs is absent.
inline std::optional<HttpVerb> parse_verb(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto v : kAllVerbs) {
    if (to_string(v) == upper) return v;
  }
  return std::nullopt;
}

struct QueryParam {
  std::string name;
  std::string value;

  bool operator==(const QueryParam&) const = default;
};

// Response-body assertion descriptors.
namespace assertion {
struct EmptyOrNull {
  bool operator==(const EmptyOrNull&) const = default;
};
struct EqualsLiteral {
  std::string literal;
  bool operator==(const EqualsLiteral&) const = default;
};
struct SizeEquals {
  std::int64_t count = 0;
  bool operator==(const SizeEquals&) const = default;
};
struct Field {
  std::string path;
  bool operator==(const Field&) const = default;
};
struct Other {
  std::string raw;
  bool operator==(const Other&) const = default;
};
}  // namespace assertion

using BodyAssertion = std::variant<assertion::EmptyOrNull, assertion::EqualsLiteral, assertion::SizeEquals,
                                   assertion::Field, assertion::Other>;

struct HttpCall {
  HttpVerb verb = HttpVerb::Get;
  std::string raw_url;
  std::string path = "/";
  std::optional<std::string> path_template;
  std::vector<QueryParam> query;
  std::optional<int> expected_status;
  std::optional<std::string> content_type;
  std::vector<BodyAssertion> body_assertions;

  bool operator==(const HttpCall&) const = default;
};

/// Auxiliary infrastructure a test relies on. Ordered SQL < MONGO < WIREMOCK < OTHER(label).
struct Mechanism {
  enum class Kind { Sql, Mongo, WireMock, Other };

  Kind kind = Kind::Sql;
  std::string label;  // only meaningful for Other

  static Mechanism sql() { return {Kind::Sql, {}}; }
  static Mechanism mongo() { return {Kind::Mongo, {}}; }
  static Mechanism wiremock() { return {Kind::WireMock, {}}; }
  static Mechanism other(std::string label) { return {Kind::Other, std::move(label)}; }

  auto operator<=>(const Mechanism&) const = default;
  bool operator==(const Mechanism&) const = default;
};

struct SetupAction {
  Mechanism mechanism;
  std::optional<std::string> detail;

  bool operator==(const SetupAction&) const = default;
};

struct FaultAnnotation {
  std::string code;
  std::optional<std::string> label;

  bool operator==(const FaultAnnotation&) const = default;
};

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool contains(const Span& other) const noexcept { return begin <= other.begin && other.end <= end; }
  bool overlaps(const Span& other) const noexcept { return begin < other.end && other.begin < end; }
  bool operator==(const Span&) const = default;
};

struct TestCase {
  std::string original_name;
  std::vector<HttpCall> calls;
  std::vector<SetupAction> setup;
  std::vector<FaultAnnotation> faults;
  std::uint64_t creation_index = 0;
  std::optional<Span> source_span;

  bool operator==(const TestCase&) const = default;
};

enum class Dialect { JavaLike, KotlinLike };

struct TestSuite {
  std::string name;
  std::vector<TestCase> tests;
  std::optional<Dialect> source_dialect;
  std::optional<std::vector<std::string>> templates;

  bool operator==(const TestSuite&) const = default;
};

struct Violation {
  std::string test;   // test name(s) involved, empty for suite-level rules
  std::string field;  // e.g. "calls[0].path"
  std::string rule;

  bool operator==(const Violation&) const = default;
};

namespace detail {

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool is_identifier(std::string_view s) {
  return !s.empty() && is_ident_start(s.front()) && std::all_of(s.begin(), s.end(), is_ident_char);
}

inline bool is_fault_code(std::string_view s) {
  if (s.empty()) return false;
  bool digits = std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  return digits || is_identifier(s);
}

inline std::string describe(const TestCase& t) {
  return t.original_name + " (#" + std::to_string(t.creation_index) + ")";
}

}  // namespace detail

/// Checks every IR invariant. An empty result means the suite is valid.
inline std::vector<Violation> validate_suite(const TestSuite& suite) {
  std::vector<Violation> out;

  std::map<std::uint64_t, std::vector<const TestCase*>> by_index;
  for (const auto& t : suite.tests) by_index[t.creation_index].push_back(&t);
  for (const auto& [index, tests] : by_index) {
    if (tests.size() < 2) continue;
    std::string names;
    for (const auto* t : tests) {
      if (!names.empty()) names += ", ";
      names += detail::describe(*t);
    }
    out.push_back({names, "creation_index", "creation_index " + std::to_string(index) + " is not unique"});
  }

  for (const auto& t : suite.tests) {
    const auto who = detail::describe(t);
    if (t.source_span && !(t.source_span->begin < t.source_span->end)) {
      out.push_back({who, "source_span", "start must be < end"});
    }

    for (std::size_t ci = 0; ci < t.calls.size(); ++ci) {
      const auto& call = t.calls[ci];
      const auto at = "calls[" + std::to_string(ci) + "]";
      if (call.path.empty() || call.path.front() != '/') {
        out.push_back({who, at + ".path", "path must begin with '/'"});
      }
      if (call.path.find_first_of("?#") != std::string::npos) {
        out.push_back({who, at + ".path", "path must not contain '?' or '#'"});
      }
      if (call.expected_status && (*call.expected_status < 100 || *call.expected_status > 599)) {
        out.push_back({who, at + ".expected_status", "status must lie in [100, 599]"});
      }
      if (call.path_template) {
        if (!is_well_formed_template(*call.path_template)) {
          out.push_back({who, at + ".path_template", "template is not well-formed"});
        } else if (!template_matches(*call.path_template, call.path)) {
          out.push_back({who, at + ".path_template", "static segments must equal the path's segments"});
        }
      }
      for (std::size_t qi = 0; qi < call.query.size(); ++qi) {
        const auto& q = call.query[qi];
        const auto qat = at + ".query[" + std::to_string(qi) + "].name";
        if (q.name.empty()) out.push_back({who, qat, "query parameter name must be nonempty"});
        if (q.name.find_first_of("=&?") != std::string::npos) {
          out.push_back({who, qat, "query parameter name must not contain '=', '&' or '?'"});
        }
      }
      for (std::size_t ai = 0; ai < call.body_assertions.size(); ++ai) {
        const auto aat = at + ".body_assertions[" + std::to_string(ai) + "]";
        const auto& a = call.body_assertions[ai];
        if (const auto* size = std::get_if<assertion::SizeEquals>(&a); size && size->count < 0) {
          out.push_back({who, aat, "SizeEquals count must be >= 0"});
        }
        if (const auto* field = std::get_if<assertion::Field>(&a)) {
          if (field->path.empty()) out.push_back({who, aat, "Field path must be nonempty"});
          if (field->path == "size()") out.push_back({who, aat, "size() checks must be SizeEquals"});
        }
      }
    }

    for (std::size_t si = 0; si < t.setup.size(); ++si) {
      const auto& m = t.setup[si].mechanism;
      if (m.kind == Mechanism::Kind::Other && !detail::is_identifier(m.label)) {
        out.push_back({who, "setup[" + std::to_string(si) + "].mechanism", "OTHER label must be an identifier"});
      }
    }

    std::vector<std::string> seen;
    for (std::size_t fi = 0; fi < t.faults.size(); ++fi) {
      const auto& code = t.faults[fi].code;
      const auto fat = "faults[" + std::to_string(fi) + "].code";
      if (!detail::is_fault_code(code)) out.push_back({who, fat, "fault code must be digits or an identifier"});
      if (std::find(seen.begin(), seen.end(), code) != seen.end()) {
        out.push_back({who, fat, "fault code '" + code + "' is duplicated"});
      }
      seen.push_back(code);
    }
  }
  return out;
}

}  // namespace restnamer
