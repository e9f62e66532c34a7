// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "support.hpp"

namespace restnamer {
namespace {

using testing::fig3_test;
using testing::make_call;
using testing::make_suite;
using testing::make_test;

TEST(HttpVerb, RoundTripsThroughText) {
  for (auto v : kAllVerbs) {
    EXPECT_EQ(parse_verb(to_string(v)), v);
  }
  EXPECT_EQ(parse_verb("get"), HttpVerb::Get);
  EXPECT_EQ(parse_verb("Patch"), HttpVerb::Patch);
  EXPECT_FALSE(parse_verb("CONNECT").has_value());
  EXPECT_FALSE(parse_verb("").has_value());
}

TEST(HttpVerb, OrderFollowsTheVerbList) {
  EXPECT_EQ(to_string(kAllVerbs[0]), "GET");
  EXPECT_EQ(to_string(kAllVerbs[7]), "HEAD");
  EXPECT_LT(static_cast<int>(HttpVerb::Delete), static_cast<int>(HttpVerb::Options));
}

TEST(Span, Relations) {
  Span a{0, 10}, b{2, 5}, c{10, 12};
  EXPECT_EQ(a.size(), 10u);
  EXPECT_TRUE(a.contains(b));
  EXPECT_FALSE(b.contains(a));
  EXPECT_TRUE(a.overlaps(b));
  EXPECT_FALSE(a.overlaps(c));
}

TEST(ValidateSuite, DuplicateCreationIndexNamesBothTests) {
  auto suite = make_suite({make_test("a", make_call(HttpVerb::Get, "/a")), make_test("b", make_call(HttpVerb::Get, "/b"))});
  suite.tests[1].creation_index = 0;
  auto v = validate_suite(suite);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].test.find("a"), std::string::npos);
  EXPECT_NE(v[0].test.find("b"), std::string::npos);
  EXPECT_EQ(v[0].field, "creation_index");
}

TEST(ValidateSuite, PathWithoutLeadingSlash) {
  auto suite = make_suite({make_test("t", make_call(HttpVerb::Get, "news"))});
  auto v = validate_suite(suite);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "calls[0].path");
}

TEST(ValidateSuite, Fig3IsValid) { EXPECT_TRUE(validate_suite(make_suite({fig3_test()})).empty()); }

TEST(ValidateSuite, EmptySuiteIsValid) { EXPECT_TRUE(validate_suite(TestSuite{}).empty()); }

TEST(ValidateSuite, EachInvariantIsReported) {
  auto call = make_call(HttpVerb::Get, "/a?b", 42, {assertion::SizeEquals{-1}, assertion::Field{"size()"}, assertion::Field{""}},
                        {{"", "x"}, {"a=b", "y"}});
  call.path_template = "/z";
  auto t = make_test("t", call);
  t.setup.push_back({Mechanism::other("not an id"), std::nullopt});
  t.faults = {{"401", std::nullopt}, {"401", std::nullopt}, {"", std::nullopt}};
  t.source_span = Span{5, 5};
  auto v = validate_suite(make_suite({t}));
  std::set<std::string> fields;
  for (const auto& x : v) fields.insert(x.field);
  for (const char* f : {"calls[0].path", "calls[0].expected_status", "calls[0].path_template", "calls[0].query[0].name",
                        "calls[0].query[1].name", "calls[0].body_assertions[0]", "calls[0].body_assertions[1]",
                        "calls[0].body_assertions[2]", "setup[0].mechanism", "source_span"}) {
    EXPECT_TRUE(fields.count(f)) << f;
  }
  bool fault_dup = false, fault_bad = false;
  for (const auto& x : v) {
    if (x.field.rfind("faults", 0) == 0 && x.rule.find("duplicated") != std::string::npos) fault_dup = true;
    if (x.field.rfind("faults", 0) == 0 && x.rule.find("duplicated") == std::string::npos) fault_bad = true;
  }
  EXPECT_TRUE(fault_dup);
  EXPECT_TRUE(fault_bad);
}

TEST(ValidateSuite, TemplateMustAgreeWithPath) {
  auto call = make_call(HttpVerb::Get, "/users/42/orders/1234");
  call.path_template = "/users/{userId}/orders/{productId}";
  EXPECT_TRUE(validate_suite(make_suite({make_test("t", call)})).empty());
  call.path_template = "/users/{userId}/items/{productId}";
  EXPECT_EQ(validate_suite(make_suite({make_test("t", call)})).size(), 1u);
}

TEST(Mechanism, TotalOrder) {
  EXPECT_LT(Mechanism::sql(), Mechanism::mongo());
  EXPECT_LT(Mechanism::mongo(), Mechanism::wiremock());
  EXPECT_LT(Mechanism::wiremock(), Mechanism::other("A"));
  EXPECT_LT(Mechanism::other("A"), Mechanism::other("B"));
}

TEST(Path, Segments) {
  EXPECT_TRUE(split_segments("/").empty());
  EXPECT_EQ(split_segments("/users/42"), (std::vector<std::string>{"users", "42"}));
  EXPECT_TRUE(is_placeholder("{id}"));
  EXPECT_FALSE(is_placeholder("id"));
  EXPECT_FALSE(is_placeholder("{}x"));
  EXPECT_EQ(join_segments({"a", "b"}), "/a/b");
  EXPECT_EQ(join_segments({}), "/");
  EXPECT_TRUE(template_matches("/users/{id}", "/users/7"));
  EXPECT_FALSE(template_matches("/users/{id}", "/users"));
  EXPECT_FALSE(template_matches("/users/{id}", "/items/7"));
}

}  // namespace
}  // namespace restnamer
