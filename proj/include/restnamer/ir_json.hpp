// SPDX-License-Identifier: Apache-2.0
#pragma once

// Canonical IR JSON file format:
//   {"suite": {"name", "source_dialect", "templates", "tests": [...]}}
// Reading is strict by default: unknown fields are rejected.

#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "restnamer/errors.hpp"
#include "restnamer/model.hpp"

namespace restnamer {

using Json = nlohmann::ordered_json;

struct IrReadOptions {
  bool lenient = false;
};

namespace ir_detail {

template <typename T>
Json optional_to_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline std::string_view mechanism_name(const Mechanism& m, std::string& buffer) {
  switch (m.kind) {
    case Mechanism::Kind::Sql: return "SQL";
    case Mechanism::Kind::Mongo: return "MONGO";
    case Mechanism::Kind::WireMock: return "WIREMOCK";
    case Mechanism::Kind::Other: break;
  }
  buffer = "OTHER:" + m.label;
  return buffer;
}

inline Json assertion_to_json(const BodyAssertion& a) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, assertion::EmptyOrNull>) {
          return Json{{"kind", "EmptyOrNull"}};
        } else if constexpr (std::is_same_v<T, assertion::EqualsLiteral>) {
          return Json{{"kind", "EqualsLiteral"}, {"literal", v.literal}};
        } else if constexpr (std::is_same_v<T, assertion::SizeEquals>) {
          return Json{{"kind", "SizeEquals"}, {"count", v.count}};
        } else if constexpr (std::is_same_v<T, assertion::Field>) {
          return Json{{"kind", "Field"}, {"path", v.path}};
        } else {
          return Json{{"kind", "Other"}, {"raw", v.raw}};
        }
      },
      a);
}

class Reader {
 public:
  explicit Reader(IrReadOptions options) : options_(options) {}

  TestSuite suite(const Json& root) const {
    const auto& doc = object(root, "document");
    check_keys(doc, "document", {"suite"});
    const auto& s = object(required(doc, "suite", "document"), "suite");
    check_keys(s, "suite", {"name", "source_dialect", "templates", "tests"});

    TestSuite out;
    out.name = string(required(s, "name", "suite"), "suite.name");
    if (auto d = nullable(s, "source_dialect")) {
      auto text = string(*d, "suite.source_dialect");
      if (text == "java") {
        out.source_dialect = Dialect::JavaLike;
      } else if (text == "kotlin") {
        out.source_dialect = Dialect::KotlinLike;
      } else {
        throw IrError("suite.source_dialect: expected \"java\", \"kotlin\" or null, got \"" + text + "\"");
      }
    }
    if (auto t = nullable(s, "templates")) {
      std::vector<std::string> templates;
      for (const auto& item : array(*t, "suite.templates")) templates.push_back(string(item, "suite.templates[]"));
      out.templates = std::move(templates);
    }
    const auto& tests = array(required(s, "tests", "suite"), "suite.tests");
    for (std::size_t i = 0; i < tests.size(); ++i) {
      out.tests.push_back(test(tests[i], "suite.tests[" + std::to_string(i) + "]"));
    }
    return out;
  }

 private:
  TestCase test(const Json& j, const std::string& at) const {
    object(j, at);
    check_keys(j, at, {"original_name", "creation_index", "calls", "setup", "faults", "source_span"});
    TestCase t;
    t.original_name = string(required(j, "original_name", at), at + ".original_name");
    const auto& ci = required(j, "creation_index", at);
    if (!ci.is_number_unsigned()) throw IrError(at + ".creation_index: expected a nonnegative integer");
    t.creation_index = ci.get<std::uint64_t>();

    const auto& calls = array(required(j, "calls", at), at + ".calls");
    for (std::size_t i = 0; i < calls.size(); ++i) t.calls.push_back(call(calls[i], at + ".calls[" + std::to_string(i) + "]"));

    if (auto setup = nullable(j, "setup")) {
      const auto& items = array(*setup, at + ".setup");
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto sat = at + ".setup[" + std::to_string(i) + "]";
        object(items[i], sat);
        check_keys(items[i], sat, {"mechanism", "detail"});
        SetupAction action;
        action.mechanism = mechanism(string(required(items[i], "mechanism", sat), sat + ".mechanism"), sat);
        if (auto d = nullable(items[i], "detail")) action.detail = string(*d, sat + ".detail");
        t.setup.push_back(std::move(action));
      }
    }
    if (auto faults = nullable(j, "faults")) {
      const auto& items = array(*faults, at + ".faults");
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto fat = at + ".faults[" + std::to_string(i) + "]";
        object(items[i], fat);
        check_keys(items[i], fat, {"code", "label"});
        FaultAnnotation f;
        const auto& code = required(items[i], "code", fat);
        f.code = code.is_number_unsigned() ? std::to_string(code.get<std::uint64_t>()) : string(code, fat + ".code");
        if (auto l = nullable(items[i], "label")) f.label = string(*l, fat + ".label");
        t.faults.push_back(std::move(f));
      }
    }
    if (auto span = nullable(j, "source_span")) {
      const auto& pair = array(*span, at + ".source_span");
      if (pair.size() != 2 || !pair[0].is_number_unsigned() || !pair[1].is_number_unsigned()) {
        throw IrError(at + ".source_span: expected [start, end]");
      }
      t.source_span = Span{pair[0].get<std::size_t>(), pair[1].get<std::size_t>()};
    }
    return t;
  }

  HttpCall call(const Json& j, const std::string& at) const {
    object(j, at);
    check_keys(j, at,
               {"verb", "raw_url", "path", "path_template", "query", "expected_status", "content_type",
                "body_assertions"});
    HttpCall c;
    auto verb_text = string(required(j, "verb", at), at + ".verb");
    auto verb = parse_verb(verb_text);
    if (!verb) throw IrError(at + ".verb: unknown HTTP verb \"" + verb_text + "\"");
    c.verb = *verb;
    c.raw_url = j.contains("raw_url") ? string(j.at("raw_url"), at + ".raw_url") : std::string{};
    c.path = string(required(j, "path", at), at + ".path");
    if (auto t = nullable(j, "path_template")) c.path_template = string(*t, at + ".path_template");
    if (auto q = nullable(j, "query")) {
      const auto& items = array(*q, at + ".query");
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto qat = at + ".query[" + std::to_string(i) + "]";
        object(items[i], qat);
        check_keys(items[i], qat, {"name", "value"});
        c.query.push_back({string(required(items[i], "name", qat), qat + ".name"),
                           string(required(items[i], "value", qat), qat + ".value")});
      }
    }
    if (auto s = nullable(j, "expected_status")) {
      if (!s->is_number_integer()) throw IrError(at + ".expected_status: expected an integer or null");
      c.expected_status = s->get<int>();
    }
    if (auto ct = nullable(j, "content_type")) c.content_type = string(*ct, at + ".content_type");
    if (auto b = nullable(j, "body_assertions")) {
      const auto& items = array(*b, at + ".body_assertions");
      for (std::size_t i = 0; i < items.size(); ++i) {
        c.body_assertions.push_back(body_assertion(items[i], at + ".body_assertions[" + std::to_string(i) + "]"));
      }
    }
    return c;
  }

  BodyAssertion body_assertion(const Json& j, const std::string& at) const {
    object(j, at);
    auto kind = string(required(j, "kind", at), at + ".kind");
    if (kind == "EmptyOrNull") {
      check_keys(j, at, {"kind"});
      return assertion::EmptyOrNull{};
    }
    if (kind == "EqualsLiteral") {
      check_keys(j, at, {"kind", "literal"});
      return assertion::EqualsLiteral{string(required(j, "literal", at), at + ".literal")};
    }
    if (kind == "SizeEquals") {
      check_keys(j, at, {"kind", "count"});
      const auto& n = required(j, "count", at);
      if (!n.is_number_integer()) throw IrError(at + ".count: expected an integer");
      return assertion::SizeEquals{n.get<std::int64_t>()};
    }
    if (kind == "Field") {
      check_keys(j, at, {"kind", "path"});
      return assertion::Field{string(required(j, "path", at), at + ".path")};
    }
    if (kind == "Other") {
      check_keys(j, at, {"kind", "raw"});
      return assertion::Other{string(required(j, "raw", at), at + ".raw")};
    }
    throw IrError(at + ".kind: unknown body assertion kind \"" + kind + "\"");
  }

  static Mechanism mechanism(const std::string& text, const std::string& at) {
    if (text == "SQL") return Mechanism::sql();
    if (text == "MONGO") return Mechanism::mongo();
    if (text == "WIREMOCK") return Mechanism::wiremock();
    if (text.rfind("OTHER:", 0) == 0 && text.size() > 6) return Mechanism::other(text.substr(6));
    throw IrError(at + ".mechanism: expected SQL, MONGO, WIREMOCK or OTHER:<label>, got \"" + text + "\"");
  }

  void check_keys(const Json& j, const std::string& at, std::initializer_list<std::string_view> allowed) const {
    if (options_.lenient) return;
    for (const auto& [key, _] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw IrError(at + ": unknown field \"" + key + "\"");
      }
    }
  }

  static const Json& object(const Json& j, const std::string& at) {
    if (!j.is_object()) throw IrError(at + ": expected an object");
    return j;
  }
  static const Json& array(const Json& j, const std::string& at) {
    if (!j.is_array()) throw IrError(at + ": expected an array");
    return j;
  }
  static std::string string(const Json& j, const std::string& at) {
    if (!j.is_string()) throw IrError(at + ": expected a string");
    return j.get<std::string>();
  }
  static const Json& required(const Json& j, std::string_view key, const std::string& at) {
    auto it = j.find(key);
    if (it == j.end()) throw IrError(at + ": missing field \"" + std::string(key) + "\"");
    return *it;
  }
  static std::optional<Json> nullable(const Json& j, std::string_view key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return *it;
  }

  IrReadOptions options_;
};

}  // namespace ir_detail

inline Json to_json(const HttpCall& c) {
  Json query = Json::array();
  for (const auto& q : c.query) query.push_back(Json{{"name", q.name}, {"value", q.value}});
  Json assertions = Json::array();
  for (const auto& a : c.body_assertions) assertions.push_back(ir_detail::assertion_to_json(a));
  return Json{{"verb", std::string(to_string(c.verb))},
              {"raw_url", c.raw_url},
              {"path", c.path},
              {"path_template", ir_detail::optional_to_json(c.path_template)},
              {"query", std::move(query)},
              {"expected_status", ir_detail::optional_to_json(c.expected_status)},
              {"content_type", ir_detail::optional_to_json(c.content_type)},
              {"body_assertions", std::move(assertions)}};
}

inline Json to_json(const TestCase& t) {
  Json calls = Json::array();
  for (const auto& c : t.calls) calls.push_back(to_json(c));
  Json setup = Json::array();
  for (const auto& s : t.setup) {
    std::string buffer;
    setup.push_back(Json{{"mechanism", std::string(ir_detail::mechanism_name(s.mechanism, buffer))},
                         {"detail", ir_detail::optional_to_json(s.detail)}});
  }
  Json faults = Json::array();
  for (const auto& f : t.faults) faults.push_back(Json{{"code", f.code}, {"label", ir_detail::optional_to_json(f.label)}});
  Json span = t.source_span ? Json::array({t.source_span->begin, t.source_span->end}) : Json(nullptr);
  return Json{{"original_name", t.original_name},
              {"creation_index", t.creation_index},
              {"calls", std::move(calls)},
              {"setup", std::move(setup)},
              {"faults", std::move(faults)},
              {"source_span", std::move(span)}};
}

inline Json to_json(const TestSuite& suite) {
  Json dialect = nullptr;
  if (suite.source_dialect) dialect = *suite.source_dialect == Dialect::KotlinLike ? "kotlin" : "java";
  Json tests = Json::array();
  for (const auto& t : suite.tests) tests.push_back(to_json(t));
  return Json{{"suite",
               {{"name", suite.name},
                {"source_dialect", std::move(dialect)},
                {"templates", ir_detail::optional_to_json(suite.templates)},
                {"tests", std::move(tests)}}}};
}

inline std::string write_ir(const TestSuite& suite, int indent = 2) { return to_json(suite).dump(indent) + "\n"; }

inline TestSuite suite_from_json(const Json& root, IrReadOptions options = {}) {
  return ir_detail::Reader(options).suite(root);
}

/// Parses IR JSON text. Throws IrError on malformed JSON or schema violations.
inline TestSuite read_ir(std::string_view text, IrReadOptions options = {}) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IrError(std::string("invalid JSON: ") + e.what());
  }
  return suite_from_json(root, options);
}

}  // namespace restnamer
