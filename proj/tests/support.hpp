// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "restnamer/restnamer.hpp"

namespace restnamer::testing {

inline std::string corpus_path(const std::string& name) { return std::string(RESTNAMER_CORPUS_DIR) + "/" + name; }

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(corpus_path(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SourceFile corpus_file(const std::string& name) {
  return SourceFile{corpus_path(name), read_corpus(name), dialect_for_path(name)};
}

inline ParseResult parse_corpus(const std::string& name) { return parse_source(corpus_file(name)); }

inline HttpCall make_call(HttpVerb verb, std::string path, std::optional<int> status = 200,
                          std::vector<BodyAssertion> assertions = {}, std::vector<QueryParam> query = {}) {
  HttpCall c;
  c.verb = verb;
  c.path = std::move(path);
  c.query = std::move(query);
  c.raw_url = serialize_url(c.path, c.query);
  c.expected_status = status;
  c.body_assertions = std::move(assertions);
  return c;
}

inline TestCase make_test(std::string name, HttpCall call, std::uint64_t creation_index = 0) {
  TestCase t;
  t.original_name = std::move(name);
  t.calls.push_back(std::move(call));
  t.creation_index = creation_index;
  return t;
}

/// Suite whose tests get creation_index equal to their position.
inline TestSuite make_suite(std::vector<TestCase> tests, std::string name = "GeneratedTest") {
  TestSuite s;
  s.name = std::move(name);
  for (std::size_t i = 0; i < tests.size(); ++i) tests[i].creation_index = i;
  s.tests = std::move(tests);
  return s;
}

/// The Fig1.java corpus test as IR, built by hand.
inline TestCase fig1_test() {
  HttpCall c = make_call(HttpVerb::Get, "/users/42/orders/1234", 200, {assertion::Field{"currency"}},
                         {{"includeItems", "true"}, {"currency", "EUR"}});
  c.content_type = "application/json";
  return make_test("test1", c);
}

/// The Fig3.java corpus test as IR, built by hand.
inline TestCase fig3_test() {
  HttpCall c = make_call(HttpVerb::Get, "/news", 200, {assertion::SizeEquals{0}},
                         {{"authorId", "Z7R6YC7R9Sn_HJ"}, {"country", ""}});
  c.content_type = "application/vnd.tsdes.news+json";
  auto t = make_test("test_3", c);
  t.setup.push_back({Mechanism::sql(), std::string("NEWS_ENTITY")});
  return t;
}

// ---------------------------------------------------------------------------
// Random generation

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  std::string word() {
    static const std::vector<std::string> words = {"users",  "orders", "news",    "items",   "products", "cart",
                                                   "photos", "albums", "authors", "country", "tags",     "api",
                                                   "v1",     "search", "user-profiles", "line_items"};
    return pick(words);
  }

  std::string identifier() {
    static const std::string first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    static const std::string rest = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    std::string s(1, first[below(first.size())]);
    auto n = below(10);
    for (std::size_t i = 0; i < n; ++i) s += rest[below(rest.size())];
    return s;
  }

  std::string literal() {
    switch (below(6)) {
      case 0: return "";
      case 1: return "{}";
      case 2: return "[]";
      case 3: return "x y";
      case 4: return identifier();
      default: return std::to_string(range(-50, 50));
    }
  }

  std::string field_path() {
    std::string f = identifier();
    if (chance(0.3)) f += "." + identifier();
    if (chance(0.1)) f = "[0]." + f;
    return f;
  }

  BodyAssertion assertion() {
    switch (below(5)) {
      case 0: return assertion::EmptyOrNull{};
      case 1: return assertion::EqualsLiteral{literal()};
      case 2: return assertion::SizeEquals{chance(0.4) ? 0 : range(1, 100)};
      case 3: return assertion::Field{field_path()};
      default: return assertion::Other{"matches(" + identifier() + ")"};
    }
  }

  std::vector<BodyAssertion> assertions(std::size_t max = 5) {
    std::vector<BodyAssertion> out;
    auto n = below(max + 1);
    for (std::size_t i = 0; i < n; ++i) out.push_back(assertion());
    return out;
  }

  std::string path_segment() {
    switch (below(6)) {
      case 0: return std::to_string(range(0, 99999));
      case 1: return "550e8400-e29b-41d4-a716-4466554400" + std::to_string(range(10, 99));
      default: return word();
    }
  }

  std::string path(std::size_t max_depth = 5) {
    auto n = below(max_depth + 1);
    if (n == 0) return "/";
    std::string p;
    for (std::size_t i = 0; i < n; ++i) p += "/" + path_segment();
    return p;
  }

  std::string query_value() {
    switch (below(7)) {
      case 0: return "true";
      case 1: return "false";
      case 2: return "";
      case 3: return "-" + std::to_string(range(1, 1000));
      case 4: return "-" + std::to_string(range(1, 9)) + "." + std::to_string(range(0, 99));
      case 5: return std::to_string(range(0, 1000));
      default: return identifier();
    }
  }

  std::vector<QueryParam> query(std::size_t max = 4) {
    std::vector<QueryParam> out;
    auto n = below(max + 1);
    for (std::size_t i = 0; i < n; ++i) out.push_back({identifier(), query_value()});
    return out;
  }

  std::optional<int> status() {
    static const std::vector<int> codes = {200, 201, 204, 301, 400, 401, 403, 404, 409, 415, 500, 502, 503};
    if (chance(0.1)) return std::nullopt;
    return pick(codes);
  }

  HttpCall call() {
    auto verb = kAllVerbs[below(kAllVerbs.size())];
    if (chance(0.4)) verb = HttpVerb::Get;
    auto status = status_or_ok();
    return make_call(verb, path(), status, assertions(), query());
  }

  Mechanism mechanism() {
    switch (below(5)) {
      case 0:
      case 1: return Mechanism::sql();
      case 2: return Mechanism::mongo();
      case 3: return Mechanism::wiremock();
      default: return Mechanism::other(chance(0.5) ? "Redis" : "kafka_topic");
    }
  }

  std::vector<FaultAnnotation> faults() {
    std::vector<FaultAnnotation> out;
    if (!chance(0.2)) return out;
    static const std::vector<std::string> codes = {"100", "101", "401", "403", "500", "900", "schemaMismatch"};
    auto n = 1 + below(3);
    std::set<std::string> used;
    for (std::size_t i = 0; i < n; ++i) {
      auto c = pick(codes);
      if (!used.insert(c).second) continue;
      FaultAnnotation f{c, std::nullopt};
      if (chance(0.2)) f.label = "custom_" + identifier();
      out.push_back(f);
    }
    return out;
  }

  TestCase test(std::uint64_t creation_index) {
    TestCase t;
    t.original_name = "test" + std::to_string(creation_index);
    auto calls = 1 + below(3);
    for (std::size_t i = 0; i < calls; ++i) t.calls.push_back(call());
    auto setups = below(3);
    for (std::size_t i = 0; i < setups; ++i) t.setup.push_back({mechanism(), std::nullopt});
    t.faults = faults();
    t.creation_index = creation_index;
    return t;
  }

  /// Random suite of at most max_tests tests with distinct but shuffled creation indices.
  TestSuite suite(std::size_t max_tests) {
    TestSuite s;
    s.name = "Random" + std::to_string(below(1000)) + "Test";
    auto n = below(max_tests + 1);
    std::vector<std::uint64_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i * 3 + below(3);
    std::shuffle(indices.begin(), indices.end(), rng_);
    for (auto idx : indices) s.tests.push_back(test(idx));
    if (chance(0.3)) s.templates = std::vector<std::string>{"/users/{id}", "/users/{id}/orders/{orderId}", "/news"};
    return s;
  }

 private:
  std::optional<int> status_or_ok() {
    if (chance(0.3)) return 200;
    return status();
  }

  std::mt19937_64 rng_;
};

}  // namespace restnamer::testing
