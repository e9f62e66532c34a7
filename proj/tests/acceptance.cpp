// SPDX-License-Identifier: Apache-2.0
// Acceptance checks: one [PASS]/[FAIL] line per criterion, non-zero exit on any failure.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "properties.hpp"

namespace {

using namespace restnamer;
using Clock = std::chrono::steady_clock;

struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void equal(const std::string& got, const std::string& want, const std::string& what) {
    if (got != want) failures.push_back(what + ": got '" + got + "', want '" + want + "'");
  }
  void property(const std::string& result, const std::string& what) {
    if (!result.empty()) failures.push_back(what + ": " + result);
  }
};

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string name_of(const TestSuite& suite, Convention c, bool suppress, std::size_t i = 0) {
  NamingConfig cfg;
  cfg.convention = c;
  cfg.suppress_majority_mechanism = suppress;
  return name_suite(suite, cfg).at(i).rendered;
}

void worked_names(Check& check) {
  auto timed = [&](const std::string& label, const std::function<void()>& body) {
    auto start = Clock::now();
    body();
    auto t = seconds_since(start);
    check.expect(t < 1.0, label + " took " + std::to_string(t) + " s");
  };
  auto fig1 = testing::parse_corpus("Fig1.java").suite;
  auto fig3 = testing::parse_corpus("Fig3.java").suite;
  timed("Fig1.java RESULT", [&] { check.equal(name_of(fig1, Convention::Result, true), "test_0_getOnOrdersReturnsObject", "Fig1.java RESULT"); });
  timed("Fig1.java QUERY", [&] {
    check.equal(name_of(fig1, Convention::Query, true), "test_0_getOnUsersOrdersWithQueryParamsReturnsObject", "Fig1.java QUERY");
  });
  timed("Fig1.java CONDITION", [&] {
    check.equal(name_of(fig1, Convention::Condition, true), "test_0_getOnUsersOrdersWithQueryParamsIncludeItemsReturnsObject",
                "Fig1.java CONDITION");
  });
  timed("Fig3.java CONDITION", [&] {
    check.equal(name_of(fig3, Convention::Condition, false), "test_0_getOnNewsWithQueryParamsEmptyCountryReturnsEmptyListUsingSQL",
                "Fig3.java CONDITION, suppression off");
    check.equal(name_of(fig3, Convention::Condition, true), "test_0_getOnNewsWithQueryParamsEmptyCountryReturnsEmptyList",
                "Fig3.java CONDITION, suppression on");
  });
  timed("Figs12.java RESULT", [&] {
    auto both = testing::parse_corpus("Figs12.java").suite;
    auto a = name_of(both, Convention::Result, true, 0);
    auto b = name_of(both, Convention::Result, true, 1);
    check.equal(a, "test_0_getOnOrdersReturnsObject", "Figs12.java first");
    check.equal(b, "test_1_getOnOrdersReturnsObject", "Figs12.java second");
    check.equal(a.substr(6), b.substr(6), "Figs12.java tails");
  });
}

void classifier_table(Check& check) {
  using K = ExpectedResult::Kind;
  auto row = [&](std::vector<BodyAssertion> as, ExpectedResult want, const std::string& label) {
    auto got = classify_expected_result(testing::make_call(HttpVerb::Get, "/x", 200, std::move(as)));
    check.expect(got == want, "table row " + label);
  };
  row({assertion::EmptyOrNull{}}, ExpectedResult::of(K::Empty), "Empty (EmptyOrNull)");
  row({assertion::EqualsLiteral{""}}, ExpectedResult::of(K::Empty), "Empty (\"\")");
  row({assertion::SizeEquals{0}}, ExpectedResult::of(K::EmptyList), "EmptyList");
  row({assertion::SizeEquals{3}}, ExpectedResult::elements(3), "Elements(3)");
  row({assertion::EqualsLiteral{"{}"}}, ExpectedResult::of(K::EmptyObject), "EmptyObject");
  row({assertion::Field{"currency"}}, ExpectedResult::of(K::Object), "Object");
  row({assertion::EqualsLiteral{"EUR"}}, ExpectedResult::of(K::Str), "String");
  row({}, ExpectedResult::of(K::Content), "Content");

  testing::Gen gen(2024);
  auto start = Clock::now();
  for (int i = 0; i < 10000 && check.failures.empty(); ++i) check.property(props::classifier(gen), "random list");
  auto t = seconds_since(start);
  check.expect(t < 5.0, "10^4 random lists took " + std::to_string(t) + " s");
}

void ordering(Check& check) {
  using testing::make_call;
  using testing::make_test;
  auto names = [](const TestSuite& s) {
    std::string out;
    for (const auto& t : s.tests) out += (out.empty() ? "" : ",") + t.original_name;
    return out;
  };
  auto users = testing::parse_corpus("UsersTest.java").suite;
  check.equal(names(sort_suite(users)), "testUsers,testPermissions", "path generality");
  auto statuses = testing::make_suite({make_test("s200", make_call(HttpVerb::Get, "/x", 200)),
                                       make_test("s500", make_call(HttpVerb::Get, "/x", 500)),
                                       make_test("s404", make_call(HttpVerb::Get, "/x", 404))});
  check.equal(names(sort_suite(statuses)), "s500,s200,s404", "5xx, 2xx, 4xx");
  std::vector<TestCase> by_verb;
  for (auto it = kAllVerbs.rbegin(); it != kAllVerbs.rend(); ++it) {
    by_verb.push_back(make_test(std::string(to_string(*it)), make_call(*it, "/x", 200)));
  }
  check.equal(names(sort_suite(testing::make_suite(by_verb))), "GET,POST,PUT,DELETE,OPTIONS,PATCH,TRACE,HEAD", "verb list");

  testing::Gen gen(3030);
  auto start = Clock::now();
  for (int i = 0; i < 1000 && check.failures.empty(); ++i) check.property(props::ordering(gen.suite(50)), "random suite");
  auto t = seconds_since(start);
  check.expect(t < 10.0, "10^3 random suites took " + std::to_string(t) + " s");
}

void uniqueness(Check& check) {
  testing::Gen gen(4040);
  auto start = Clock::now();
  for (int i = 0; i < 1000 && check.failures.empty(); ++i) {
    auto s = gen.suite(50);
    for (auto c : kAllConventions) {
      for (std::size_t n : {40u, 80u, 120u}) check.property(props::names(s, c, n), "random suite");
    }
  }
  auto t = seconds_since(start);
  check.expect(t < 10.0, "10^3 random suites took " + std::to_string(t) + " s");
}

void parser_corpus(Check& check) {
  using Q = std::vector<QueryParam>;
  auto fig1 = testing::parse_corpus("Fig1.java").suite;
  check.expect(fig1.tests.size() == 1 && fig1.tests[0].calls.size() == 1, "Fig1.java has one test with one call");
  if (check.failures.empty()) {
    const auto& c = fig1.tests[0].calls[0];
    check.expect(c.verb == HttpVerb::Get, "Fig1.java verb");
    check.equal(c.path, "/users/42/orders/1234", "Fig1.java path");
    check.expect(c.query == Q{{"includeItems", "true"}, {"currency", "EUR"}}, "Fig1.java query");
    check.expect(c.expected_status == 200, "Fig1.java status");
    check.expect(c.body_assertions == std::vector<BodyAssertion>{assertion::Field{"currency"}}, "Fig1.java assertions");
    check.expect(fig1.tests[0].setup.empty(), "Fig1.java setup");
  }
  auto fig2 = testing::parse_corpus("Fig2.java").suite;
  check.expect(fig2.tests.size() == 1 && fig2.tests[0].calls.size() == 1 &&
                   fig2.tests[0].calls[0].query == Q{{"includeItems", "true"}, {"currency", "USD"}} &&
                   fig2.tests[0].calls[0].path == "/users/42/orders/1234" &&
                   fig2.tests[0].calls[0].body_assertions == std::vector<BodyAssertion>{assertion::Field{"currency"}},
               "Fig2.java IR");
  auto fig3 = testing::parse_corpus("Fig3.java").suite;
  check.expect(fig3.tests.size() == 1 && fig3.tests[0].calls.size() == 1, "Fig3.java has one test with one call");
  if (check.failures.empty()) {
    const auto& t = fig3.tests[0];
    const auto& c = t.calls[0];
    check.expect(t.setup.size() == 1 && t.setup[0].mechanism == Mechanism::sql(), "Fig3.java setup [SQL]");
    check.equal(c.path, "/news", "Fig3.java path");
    check.expect(c.query == Q{{"authorId", "Z7R6YC7R9Sn_HJ"}, {"country", ""}}, "Fig3.java query");
    check.expect(c.expected_status == 200, "Fig3.java status");
    check.expect(c.body_assertions == std::vector<BodyAssertion>{assertion::SizeEquals{0}}, "Fig3.java assertions");
  }
  for (const char* name : {"Fig1.java", "Fig2.java", "Fig3.java", "Figs12.java", "UsersTest.java"}) {
    auto file = testing::corpus_file(name);
    auto parsed = parse_source(file);
    RewritePlan plan{file, parsed.blocks, {}, {}};
    for (std::size_t i = 0; i < parsed.blocks.size(); ++i) {
      plan.renames[i] = parsed.blocks[i].name;
      plan.permutation.push_back(i);
    }
    check.expect(rename_in_place(plan) == file.text, std::string("no-op rename of ") + name);
    check.expect(rewrite(plan) == file.text, std::string("no-op rename and reorder of ") + name);
  }
}

void apply_fixpoint(Check& check) {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / ("restnamer_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const char* name : {"Fig1.java", "Fig2.java", "Fig3.java", "Figs12.java", "UsersTest.java"}) {
    auto path = (dir / name).string();
    cli::write_file_atomic(path, testing::read_corpus(name));
    std::ostringstream out, err;
    int first = cli::run_cli({"apply", path, "--in-place"}, out, err);
    auto once = cli::read_file(path);
    int second = cli::run_cli({"apply", path, "--in-place"}, out, err);
    auto twice = cli::read_file(path);
    check.expect(first == 0 && second == 0, std::string("apply exit codes for ") + name + ": " + err.str());
    check.expect(once != testing::read_corpus(name), std::string("first apply changed nothing in ") + name);
    check.expect(once == twice, std::string("second apply changed ") + name);
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"AC1", "worked-name reproduction", worked_names},
      {"AC2", "expected-result classifier", classifier_table},
      {"AC3", "suite ordering", ordering},
      {"AC4", "name uniqueness, length and shape", uniqueness},
      {"AC5", "parser corpus and no-op round trip", parser_corpus},
      {"AC6", "apply is a byte-level fixpoint", apply_fixpoint},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    auto start = Clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    auto ms = static_cast<long>(seconds_since(start) * 1000);
    bool ok = check.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << ms << " ms)\n";
    for (const auto& f : check.failures) std::cout << "       " << f << "\n";
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
