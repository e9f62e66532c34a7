// SPDX-License-Identifier: Apache-2.0
#pragma once

// Rule-based test names for REST API tests.
//
//   NUMBER     test_<i>
//   RESULT     test_<i>_<verb>On<Name><result>[Using<mechanism>]
//   QUERY      test_<i>_<verb>On[<Parent>]<Name>[WithQueryParams]<result>[Using<mechanism>]
//   CONDITION  test_<i>_<verb>On[<Parent>]<Name>[WithQueryParams<conditions>]<result>[Using<mechanism>]
//
// <result> is Returns<expected>, a fault label, or ShowsFaults_<code>_<code>...

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restnamer/errors.hpp"
#include "restnamer/model.hpp"
#include "restnamer/url.hpp"

namespace restnamer {

enum class Convention { Number, Result, Query, Condition };

inline constexpr Convention kAllConventions[] = {Convention::Number, Convention::Result, Convention::Query,
                                                 Convention::Condition};

inline std::string_view to_string(Convention c) {
  switch (c) {
    case Convention::Number: return "number";
    case Convention::Result: return "result";
    case Convention::Query: return "query";
    case Convention::Condition: return "condition";
  }
  return "condition";
}

inline std::optional<Convention> parse_convention(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (auto c : kAllConventions) {
    if (to_string(c) == lower) return c;
  }
  return std::nullopt;
}

enum class Truncation {
  Character,      // plain cut at max length
  TokenBoundary,  // cut before the last token that does not fit
};

/// Default labels for fault codes.
inline std::map<std::string, std::string> default_fault_labels() {
  return {{"100", "causes500_internalServerError"}, {"101", "returnsSchemaInvalidResponse"}};
}

struct NamingConfig {
  static constexpr std::size_t kMinNameLength = 16;

  Convention convention = Convention::Condition;
  std::size_t max_name_length = 120;
  bool suppress_majority_mechanism = true;
  std::map<std::string, std::string> fault_label_map = default_fault_labels();
  bool element_token_capitalized = true;
  Truncation truncation = Truncation::Character;

  void validate() const {
    if (max_name_length < kMinNameLength) {
      throw ConfigError("max name length must be at least " + std::to_string(kMinNameLength) + ", got " +
                        std::to_string(max_name_length));
    }
  }
};

struct ExpectedResult {
  enum class Kind { StatusCode, Empty, EmptyList, Elements, EmptyObject, Object, Str, Content };

  Kind kind = Kind::Content;
  std::int64_t value = 0;  // status code or element count

  static ExpectedResult status(int code) { return {Kind::StatusCode, code}; }
  static ExpectedResult elements(std::int64_t n) { return {Kind::Elements, n}; }
  static ExpectedResult of(Kind k) { return {k, 0}; }

  bool operator==(const ExpectedResult&) const = default;
};

struct ResultPart {
  enum class Kind { Returns, FaultLabel, ShowsFaults };

  Kind kind = Kind::Returns;
  ExpectedResult expected;         // Returns
  std::string label;               // FaultLabel
  std::vector<std::string> codes;  // ShowsFaults, ascending

  bool operator==(const ResultPart&) const = default;
};

struct ConditionToken {
  enum class Prefix { None, Negative, Empty };

  Prefix prefix = Prefix::None;
  std::string param_name;

  bool operator==(const ConditionToken&) const = default;
};

struct NameParts {
  std::uint64_t index = 0;
  HttpVerb verb = HttpVerb::Get;
  std::optional<std::string> parent_qualifier;
  std::string name_qualifier;
  bool has_query_marker = false;
  std::vector<ConditionToken> conditions;
  ResultPart result;
  std::vector<std::string> mechanisms;

  bool operator==(const NameParts&) const = default;
};

struct GeneratedName {
  std::optional<NameParts> parts;  // absent for the NUMBER convention
  std::string rendered;
  bool truncated = false;
};

struct Qualifiers {
  std::string name;
  std::optional<std::string> parent;

  bool operator==(const Qualifiers&) const = default;
};

// ---------------------------------------------------------------------------
// Tokens

/// Identifier-safe camel-case token: non-alphanumerics split words, each word
/// gets an upper-case first letter, inner casing is kept. "user-accounts" -> "UserAccounts".
inline std::string camel_token(std::string_view text) {
  std::string out;
  bool word_start = true;
  for (unsigned char c : text) {
    if (c < 0x80 && std::isalnum(c)) {
      out += word_start ? static_cast<char>(std::toupper(c)) : static_cast<char>(c);
      word_start = false;
    } else {
      word_start = true;
    }
  }
  return out;
}

/// Like camel_token but keeps underscores, for fault labels such as "causes500_internalServerError".
inline std::string label_token(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (c < 0x80 && (std::isalnum(c) || c == '_')) out += static_cast<char>(c);
  }
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

inline std::string mechanism_token(const Mechanism& m) {
  switch (m.kind) {
    case Mechanism::Kind::Sql: return "SQL";
    case Mechanism::Kind::Mongo: return "Mongo";
    case Mechanism::Kind::WireMock: return "WireMock";
    case Mechanism::Kind::Other: break;
  }
  return camel_token(m.label);
}

/// Digit-only codes compare numerically and precede identifier codes.
inline bool fault_code_less(const std::string& a, const std::string& b) {
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  bool da = digits(a), db = digits(b);
  if (da != db) return da;
  if (da) {
    auto strip = [](const std::string& s) {
      auto nz = s.find_first_not_of('0');
      return nz == std::string::npos ? std::string("0") : s.substr(nz);
    };
    auto sa = strip(a), sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

// ---------------------------------------------------------------------------
// Grammar components

/// The last HTTP call; earlier calls only prepare state.
inline const HttpCall& focal_call(const TestCase& test) {
  if (test.calls.empty()) {
    throw NoFocalCall("test '" + test.original_name + "' (#" + std::to_string(test.creation_index) +
                      ") has no HTTP call");
  }
  return test.calls.back();
}

/// Last static path segment is the resource, the one before it the parent. "/" names "Root".
inline Qualifiers derive_qualifiers(const HttpCall& call,
                                    const std::optional<std::vector<std::string>>& templates = std::nullopt) {
  std::vector<std::string> statics;
  for (const auto& seg : split_segments(resolve_template(call, templates))) {
    if (is_placeholder(seg)) continue;
    auto token = camel_token(seg);
    if (!token.empty()) statics.push_back(std::move(token));
  }
  if (statics.empty()) return {"Root", std::nullopt};
  Qualifiers q{statics.back(), std::nullopt};
  if (statics.size() >= 2) q.parent = statics[statics.size() - 2];
  return q;
}

namespace naming_detail {

// Row of the expected-result table an assertion matches; 6 means none.
inline int table_row(const BodyAssertion& a) {
  if (std::holds_alternative<assertion::EmptyOrNull>(a)) return 0;
  if (const auto* lit = std::get_if<assertion::EqualsLiteral>(&a)) {
    if (lit->literal.empty()) return 0;
    if (lit->literal == "{}") return 3;
    return 5;
  }
  if (const auto* size = std::get_if<assertion::SizeEquals>(&a)) {
    if (size->count == 0) return 1;
    if (size->count > 0) return 2;
    return 6;
  }
  if (const auto* field = std::get_if<assertion::Field>(&a)) return field->path != "size()" ? 4 : 6;
  return 6;
}

}  // namespace naming_detail

/// Summarizes the body assertions of a GET/200 call. The earliest matching row wins.
inline ExpectedResult classify_expected_result(const HttpCall& call) {
  using Kind = ExpectedResult::Kind;
  int best = 6;
  std::int64_t count = 0;
  for (const auto& a : call.body_assertions) {
    int row = naming_detail::table_row(a);
    if (row < best) {
      best = row;
      if (row == 2) count = std::get<assertion::SizeEquals>(a).count;
    }
  }
  switch (best) {
    case 0: return ExpectedResult::of(Kind::Empty);
    case 1: return ExpectedResult::of(Kind::EmptyList);
    case 2: return ExpectedResult::elements(count);
    case 3: return ExpectedResult::of(Kind::EmptyObject);
    case 4: return ExpectedResult::of(Kind::Object);
    case 5: return ExpectedResult::of(Kind::Str);
    default: return ExpectedResult::of(Kind::Content);
  }
}

/// Faults take precedence over the Returns branch.
inline ResultPart derive_result_part(const TestCase& test, const HttpCall& call, const NamingConfig& config) {
  ResultPart part;
  if (!test.faults.empty()) {
    if (test.faults.size() == 1) {
      const auto& fault = test.faults.front();
      std::optional<std::string> label = fault.label;
      if (!label) {
        if (auto it = config.fault_label_map.find(fault.code); it != config.fault_label_map.end()) label = it->second;
      }
      if (label && !label_token(*label).empty()) {
        part.kind = ResultPart::Kind::FaultLabel;
        part.label = *label;
        return part;
      }
    }
    part.kind = ResultPart::Kind::ShowsFaults;
    for (const auto& f : test.faults) {
      if (std::find(part.codes.begin(), part.codes.end(), f.code) == part.codes.end()) part.codes.push_back(f.code);
    }
    std::sort(part.codes.begin(), part.codes.end(), fault_code_less);
    return part;
  }
  part.kind = ResultPart::Kind::Returns;
  if (!call.expected_status) {
    part.expected = ExpectedResult::of(ExpectedResult::Kind::Content);
  } else if (call.verb == HttpVerb::Get && *call.expected_status == 200) {
    part.expected = classify_expected_result(call);
  } else {
    part.expected = ExpectedResult::status(*call.expected_status);
  }
  return part;
}

namespace naming_detail {

// '-' then digits, optional fractional part. "-0" counts.
inline bool is_negative_number(std::string_view v) {
  if (v.size() < 2 || v.front() != '-') return false;
  v.remove_prefix(1);
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  auto dot = v.find('.');
  auto whole = v.substr(0, dot);
  if (whole.empty() || !std::all_of(whole.begin(), whole.end(), is_digit)) return false;
  if (dot == std::string_view::npos) return true;
  auto frac = v.substr(dot + 1);
  return !frac.empty() && std::all_of(frac.begin(), frac.end(), is_digit);
}

}  // namespace naming_detail

/// Query parameters worth naming: value `true`, a negative number, or the empty string.
inline std::vector<ConditionToken> extract_query_conditions(const HttpCall& call) {
  std::vector<ConditionToken> out;
  for (const auto& q : call.query) {
    if (q.value == "true") {
      out.push_back({ConditionToken::Prefix::None, q.name});
    } else if (naming_detail::is_negative_number(q.value)) {
      out.push_back({ConditionToken::Prefix::Negative, q.name});
    } else if (q.value.empty()) {
      out.push_back({ConditionToken::Prefix::Empty, q.name});
    }
  }
  return out;
}

/// Mechanisms used by strictly more than half of the suite's tests.
inline std::set<Mechanism> majority_mechanisms(const TestSuite& suite) {
  std::map<Mechanism, std::size_t> users;
  for (const auto& t : suite.tests) {
    std::set<Mechanism> used;
    for (const auto& s : t.setup) used.insert(s.mechanism);
    for (const auto& m : used) ++users[m];
  }
  std::set<Mechanism> out;
  for (const auto& [m, n] : users) {
    if (n > suite.tests.size() / 2) out.insert(m);
  }
  return out;
}

inline std::string render_condition(const ConditionToken& c) {
  auto name = camel_token(c.param_name);
  if (name.empty()) return {};
  switch (c.prefix) {
    case ConditionToken::Prefix::Negative: return "Negative" + name;
    case ConditionToken::Prefix::Empty: return "Empty" + name;
    case ConditionToken::Prefix::None: break;
  }
  return name;
}

namespace naming_detail {

inline void append_expected(std::vector<std::string>& pieces, const ExpectedResult& r, const NamingConfig& config) {
  using Kind = ExpectedResult::Kind;
  switch (r.kind) {
    case Kind::StatusCode: pieces.push_back(std::to_string(r.value)); return;
    case Kind::Empty: pieces.push_back("Empty"); return;
    case Kind::EmptyList: pieces.push_back("EmptyList"); return;
    case Kind::Elements: {
      std::string word = r.value == 1 ? "element" : "elements";
      if (config.element_token_capitalized) word[0] = 'E';
      pieces.push_back(std::to_string(r.value));
      pieces.push_back(word);
      return;
    }
    case Kind::EmptyObject: pieces.push_back("EmptyObject"); return;
    case Kind::Object: pieces.push_back("Object"); return;
    case Kind::Str: pieces.push_back("String"); return;
    case Kind::Content: pieces.push_back("Content"); return;
  }
}

inline void append_result(std::vector<std::string>& pieces, const ResultPart& r, const NamingConfig& config) {
  switch (r.kind) {
    case ResultPart::Kind::Returns:
      pieces.push_back("Returns");
      append_expected(pieces, r.expected, config);
      return;
    case ResultPart::Kind::FaultLabel:
      pieces.push_back(label_token(r.label));
      return;
    case ResultPart::Kind::ShowsFaults:
      pieces.push_back("ShowsFaults");
      for (const auto& code : r.codes) pieces.push_back("_" + label_token(code));
      return;
  }
}

inline void check_consistent(const NameParts& parts, Convention convention) {
  if (!parts.conditions.empty() && !parts.has_query_marker) {
    throw NamingError("query conditions require the WithQueryParams marker");
  }
  if (convention == Convention::Result && (parts.parent_qualifier || parts.has_query_marker)) {
    throw NamingError("RESULT names carry no parent qualifier or query marker");
  }
  if (convention != Convention::Condition && !parts.conditions.empty()) {
    throw NamingError("only CONDITION names carry query conditions");
  }
  if (parts.result.kind == ResultPart::Kind::ShowsFaults && parts.result.codes.empty()) {
    throw NamingError("ShowsFaults needs at least one fault code");
  }
}

inline std::string index_prefix(std::uint64_t index) { return "test_" + std::to_string(index) + "_"; }

}  // namespace naming_detail

/// Concatenates the grammar tokens and applies the length limit without touching `test_<index>_`.
inline GeneratedName render_name(const NameParts& parts, const NamingConfig& config) {
  config.validate();
  GeneratedName out;
  if (config.convention == Convention::Number) {
    out.rendered = "test_" + std::to_string(parts.index);
    if (out.rendered.size() > config.max_name_length) {
      throw PrefixOverflow("'" + out.rendered + "' exceeds the maximum name length");
    }
    return out;
  }
  naming_detail::check_consistent(parts, config.convention);
  out.parts = parts;

  std::string verb(to_string(parts.verb));
  std::transform(verb.begin(), verb.end(), verb.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  std::vector<std::string> pieces{verb, "On"};
  if (parts.parent_qualifier) pieces.push_back(camel_token(*parts.parent_qualifier));
  pieces.push_back(camel_token(parts.name_qualifier));
  if (parts.has_query_marker) pieces.push_back("WithQueryParams");
  for (const auto& c : parts.conditions) pieces.push_back(render_condition(c));
  naming_detail::append_result(pieces, parts.result, config);
  for (std::size_t i = 0; i < parts.mechanisms.size(); ++i) {
    pieces.push_back(i == 0 ? "Using" : "And");
    pieces.push_back(camel_token(parts.mechanisms[i]));
  }

  const auto prefix = naming_detail::index_prefix(parts.index);
  if (prefix.size() >= config.max_name_length) {
    throw PrefixOverflow("'" + prefix + "' leaves no room within " + std::to_string(config.max_name_length) +
                         " characters");
  }
  std::string name = prefix;
  std::vector<std::size_t> boundaries;
  for (const auto& p : pieces) {
    if (p.empty()) continue;
    boundaries.push_back(name.size());
    name += p;
  }
  boundaries.push_back(name.size());

  if (name.size() > config.max_name_length) {
    std::size_t cut = config.max_name_length;
    if (config.truncation == Truncation::TokenBoundary) {
      // Keep at least the verb token.
      const std::size_t min_cut = prefix.size() + verb.size();
      for (auto b : boundaries) {
        if (b >= min_cut && b <= config.max_name_length) cut = b;
      }
      if (cut < min_cut) cut = config.max_name_length;
    }
    name.resize(cut);
    out.truncated = true;
  }
  out.rendered = std::move(name);
  return out;
}

/// Grammar components of one test. `suppressed` mechanisms are left out.
inline NameParts build_name_parts(const TestCase& test, std::uint64_t index, const NamingConfig& config,
                                  const std::optional<std::vector<std::string>>& templates,
                                  const std::set<Mechanism>& suppressed = {}) {
  const auto& call = focal_call(test);
  NameParts parts;
  parts.index = index;
  parts.verb = call.verb;
  auto q = derive_qualifiers(call, templates);
  parts.name_qualifier = q.name;
  if (config.convention == Convention::Query || config.convention == Convention::Condition) {
    parts.parent_qualifier = q.parent;
    parts.has_query_marker = !call.query.empty();
  }
  if (config.convention == Convention::Condition) parts.conditions = extract_query_conditions(call);
  parts.result = derive_result_part(test, call, config);

  std::set<Mechanism> used;
  for (const auto& s : test.setup) {
    if (!suppressed.count(s.mechanism)) used.insert(s.mechanism);
  }
  for (const auto& m : used) {
    auto token = mechanism_token(m);
    if (!token.empty()) parts.mechanisms.push_back(std::move(token));
  }
  return parts;
}

/// Names every test of the suite; indices follow the suite's current order.
inline std::vector<GeneratedName> name_suite(const TestSuite& suite, const NamingConfig& config) {
  config.validate();
  std::set<Mechanism> suppressed;
  if (config.suppress_majority_mechanism && config.convention != Convention::Number) {
    suppressed = majority_mechanisms(suite);
  }
  std::vector<GeneratedName> out;
  out.reserve(suite.tests.size());
  for (std::size_t i = 0; i < suite.tests.size(); ++i) {
    if (config.convention == Convention::Number) {
      NameParts parts;
      parts.index = i;
      out.push_back(render_name(parts, config));
      continue;
    }
    out.push_back(render_name(build_name_parts(suite.tests[i], i, config, suite.templates, suppressed), config));
  }
  return out;
}

}  // namespace restnamer
