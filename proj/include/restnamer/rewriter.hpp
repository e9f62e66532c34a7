// SPDX-License-Identifier: Apache-2.0
#pragma once

// Byte-exact edits of test source files: method renames and block reordering.
// Nothing outside the edited identifiers and moved blocks changes.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restnamer/errors.hpp"
#include "restnamer/lexer.hpp"
#include "restnamer/model.hpp"
#include "restnamer/naming.hpp"
#include "restnamer/parser.hpp"
#include "restnamer/url.hpp"

namespace restnamer {

struct RewritePlan {
  SourceFile file;
  std::vector<MethodBlock> blocks;             // every parsed block of the file
  std::map<std::size_t, std::string> renames;  // block index -> new method name
  std::vector<std::size_t> permutation;        // block indices in output order
};

namespace rewrite_detail {

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string replacement;
};

inline bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f'; });
}

inline std::size_t line_start(std::string_view text, std::size_t pos) {
  if (pos == 0) return 0;
  auto nl = text.rfind('\n', pos - 1);
  return nl == std::string_view::npos ? 0 : nl + 1;
}

/// Start of the block including comment lines directly above it, never below `floor`.
inline std::size_t extended_start(std::string_view text, std::size_t begin, std::size_t floor) {
  auto ls = line_start(text, begin);
  if (ls < floor || !blank(text.substr(ls, begin - ls))) return begin;
  auto cur = ls;
  while (cur > floor) {
    auto prev_end = cur - 1;  // the '\n' ending the previous line
    auto prev_start = line_start(text, prev_end);
    if (prev_start < floor) break;
    auto line = text.substr(prev_start, prev_end - prev_start);
    auto first = line.find_first_not_of(" \t\r\f");
    if (first == std::string_view::npos) break;
    auto last = line.find_last_not_of(" \t\r\f");
    auto trimmed = line.substr(first, last - first + 1);
    if (trimmed.substr(0, 2) == "//") {
      cur = prev_start;
      continue;
    }
    if (trimmed.size() >= 2 && trimmed.substr(trimmed.size() - 2) == "*/") {
      auto close = prev_start + last - 1;
      auto open = close == 0 ? std::string_view::npos : text.rfind("/*", close - 1);
      if (open == std::string_view::npos) break;
      auto open_line = line_start(text, open);
      if (open_line < floor || !blank(text.substr(open_line, open - open_line))) break;
      cur = open_line;
      continue;
    }
    break;
  }
  return cur;
}

inline std::string slice_with_edits(std::string_view text, std::size_t begin, std::size_t end,
                                    const std::vector<Edit>& edits) {
  std::string out;
  auto pos = begin;
  for (const auto& e : edits) {
    if (e.begin < begin || e.end > end) continue;
    out.append(text.substr(pos, e.begin - pos));
    out += e.replacement;
    pos = e.end;
  }
  out.append(text.substr(pos, end - pos));
  return out;
}

/// Position order of blocks; throws if any two full spans overlap.
inline std::vector<std::size_t> positional_order(const RewritePlan& plan) {
  std::vector<std::size_t> order(plan.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return plan.blocks[a].full_span.begin < plan.blocks[b].full_span.begin; });
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& span = plan.blocks[order[k]].full_span;
    if (span.end > plan.file.text.size() || span.begin >= span.end) {
      throw RewriteError(RewriteError::Kind::OverlappingSpans, "block '" + plan.blocks[order[k]].name + "' lies outside the file");
    }
    if (k > 0 && plan.blocks[order[k - 1]].full_span.overlaps(span)) {
      throw RewriteError(RewriteError::Kind::OverlappingSpans, "blocks '" + plan.blocks[order[k - 1]].name + "' and '" +
                                                                   plan.blocks[order[k]].name + "' overlap");
    }
  }
  return order;
}

inline void check_permutation(const RewritePlan& plan) {
  std::vector<bool> seen(plan.blocks.size(), false);
  if (plan.permutation.size() != plan.blocks.size()) {
    throw RewriteError(RewriteError::Kind::InvalidPermutation,
                       "permutation has " + std::to_string(plan.permutation.size()) + " entries for " +
                           std::to_string(plan.blocks.size()) + " blocks");
  }
  for (auto i : plan.permutation) {
    if (i >= seen.size() || seen[i]) {
      throw RewriteError(RewriteError::Kind::InvalidPermutation, "permutation is not a permutation of the file's blocks");
    }
    seen[i] = true;
  }
}

/// Validates the rename map and locates each renamed identifier.
inline std::vector<Edit> rename_edits(const RewritePlan& plan) {
  std::map<std::string, std::size_t> final_names;
  std::set<std::string> new_names;
  for (const auto& [index, name] : plan.renames) {
    if (index >= plan.blocks.size()) {
      throw RewriteError(RewriteError::Kind::InvalidPermutation, "rename refers to unknown block #" + std::to_string(index));
    }
    if (!detail::is_identifier(name)) {
      throw RewriteError(RewriteError::Kind::InvalidIdentifier, "'" + name + "' is not a valid identifier");
    }
    if (!new_names.insert(name).second) {
      throw RewriteError(RewriteError::Kind::DuplicateName, "two methods would be named '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    auto it = plan.renames.find(i);
    const auto& name = it == plan.renames.end() ? plan.blocks[i].name : it->second;
    if (it == plan.renames.end() && !new_names.count(name)) continue;
    if (auto [pos, fresh] = final_names.emplace(name, i); !fresh) {
      throw RewriteError(RewriteError::Kind::DuplicateName, "renaming would give two methods the name '" + name + "'");
    }
  }

  std::vector<Edit> edits;
  for (const auto& [index, name] : plan.renames) {
    const auto& block = plan.blocks[index];
    if (name == block.name) continue;
    auto sig = block.signature_span();
    if (sig.end < sig.begin || sig.end > plan.file.text.size()) {
      throw RewriteError(RewriteError::Kind::AmbiguousIdentifier, "block '" + block.name + "' has an invalid signature span");
    }
    std::vector<Token> toks;
    try {
      toks = tokenize(std::string_view(plan.file.text).substr(sig.begin, sig.size()), plan.file.dialect, plan.file.path);
    } catch (const ParseError&) {
      throw RewriteError(RewriteError::Kind::AmbiguousIdentifier, "cannot read the signature of '" + block.name + "'");
    }
    std::vector<const Token*> hits;
    for (const auto& t : toks) {
      if (t.kind == TokenKind::Identifier && t.text == block.name) hits.push_back(&t);
    }
    if (hits.size() != 1) {
      throw RewriteError(RewriteError::Kind::AmbiguousIdentifier,
                         "method name '" + block.name + "' occurs " + std::to_string(hits.size()) +
                             " times in its signature");
    }
    edits.push_back({sig.begin + hits[0]->begin, sig.begin + hits[0]->end, name});
  }
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.begin < b.begin; });
  return edits;
}

inline std::string apply(const RewritePlan& plan, bool rename, bool reorder) {
  const std::string_view text = plan.file.text;
  auto order = positional_order(plan);
  if (reorder) check_permutation(plan);
  std::vector<Edit> edits;
  if (rename) edits = rename_edits(plan);
  if (!reorder || plan.blocks.empty()) return slice_with_edits(text, 0, text.size(), edits);

  // Units in position order: [start, end) including leading comment lines.
  std::vector<std::size_t> start(plan.blocks.size());
  std::size_t floor = 0;
  for (auto i : order) {
    start[i] = extended_start(text, plan.blocks[i].full_span.begin, floor);
    floor = plan.blocks[i].full_span.end;
  }

  std::string out(text.substr(0, start[order.front()]));
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto unit = plan.permutation[k];
    out += slice_with_edits(text, start[unit], plan.blocks[unit].full_span.end, edits);
    auto gap_begin = plan.blocks[order[k]].full_span.end;
    auto gap_end = k + 1 < order.size() ? start[order[k + 1]] : text.size();
    out.append(text.substr(gap_begin, gap_end - gap_begin));
  }
  return out;
}

}  // namespace rewrite_detail

/// Replaces only the method-name identifiers named in plan.renames.
inline std::string rename_in_place(const RewritePlan& plan) { return rewrite_detail::apply(plan, true, false); }

/// Moves whole blocks (with the comment lines directly above them) into plan.permutation order.
inline std::string reorder_in_place(const RewritePlan& plan) { return rewrite_detail::apply(plan, false, true); }

/// Renames and reorders in a single pass.
inline std::string rewrite(const RewritePlan& plan) { return rewrite_detail::apply(plan, true, true); }

// ---------------------------------------------------------------------------
// Emission of a fresh test class from the IR

namespace emit_detail {

inline std::string quote(std::string_view s, Dialect dialect) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '$':
        out += dialect == Dialect::KotlinLike ? "\\$" : "$";
        break;
      default:
        if (c < 0x20) {
          static constexpr char kHex[] = "0123456789abcdef";
          out += "\\u00";
          out += kHex[c >> 4];
          out += kHex[c & 0xF];
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

inline std::string one_line(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '\n', ' ');
  std::replace(out.begin(), out.end(), '\r', ' ');
  return out;
}

inline std::string class_name(std::string_view name) {
  auto token = camel_token(name);
  if (token.empty() || !std::isalpha(static_cast<unsigned char>(token[0]))) token = "Generated" + token;
  return token;
}

class Emitter {
 public:
  explicit Emitter(Dialect dialect) : dialect_(dialect) {}

  std::string suite(const TestSuite& suite, const std::vector<std::string>& names) {
    bool kotlin = dialect_ == Dialect::KotlinLike;
    bool uses_sql = false, uses_mongo = false;
    for (const auto& t : suite.tests) {
      for (const auto& s : t.setup) {
        uses_sql |= s.mechanism.kind == Mechanism::Kind::Sql;
        uses_mongo |= s.mechanism.kind == Mechanism::Kind::Mongo;
      }
    }
    const char* semi = kotlin ? "" : ";";
    const char* stat = kotlin ? "" : "static ";
    out_ += std::string("import ") + stat + "io.restassured.RestAssured.given" + semi + "\n";
    out_ += std::string("import ") + stat + "org.hamcrest.Matchers.*" + semi + "\n";
    if (uses_sql) out_ += std::string("import ") + stat + "org.evomaster.client.java.sql.dsl.SqlDsl.sql" + semi + "\n";
    if (uses_mongo) out_ += std::string("import ") + stat + "org.evomaster.client.java.controller.mongo.dsl.MongoDsl.mongo" + semi + "\n";
    out_ += "\n";
    out_ += std::string("import org.junit.jupiter.api.Test") + semi + "\n";
    if (!kotlin && (uses_sql || uses_mongo)) out_ += "import java.util.List;\n";
    out_ += "\n";
    out_ += kotlin ? "class " : "public class ";
    out_ += class_name(suite.name) + " {\n\n";
    out_ += kotlin ? "    private val baseUrlOfSut = \"http://localhost:8080\"\n"
                   : "    private static String baseUrlOfSut = \"http://localhost:8080\";\n";
    for (std::size_t i = 0; i < suite.tests.size(); ++i) test(suite.tests[i], names[i]);
    out_ += "}\n";
    return std::move(out_);
  }

 private:
  void line(const std::string& s) { out_ += "        " + s + (dialect_ == Dialect::KotlinLike ? "" : ";") + "\n"; }

  void test(const TestCase& t, const std::string& name) {
    focal_call(t);
    bool kotlin = dialect_ == Dialect::KotlinLike;
    out_ += "\n    @Test\n";
    out_ += kotlin ? "    fun " + name + "() {\n" : "    public void " + name + "() throws Exception {\n";
    for (const auto& f : t.faults) {
      out_ += "        // Fault" + f.code + (f.label ? ". " + one_line(*f.label) : std::string{}) + "\n";
    }
    std::size_t n = 0;
    for (const auto& s : t.setup) setup(s, n++);
    for (const auto& c : t.calls) call(c);
    out_ += "    }\n";
  }

  void setup(const SetupAction& s, std::size_t n) {
    bool kotlin = dialect_ == Dialect::KotlinLike;
    auto var = [&](const std::string& type, const std::string& base) {
      return (kotlin ? "val " : "List<" + type + "> ") + base + std::to_string(n);
    };
    switch (s.mechanism.kind) {
      case Mechanism::Kind::Sql: {
        auto v = "insertions" + std::to_string(n);
        out_ += "        " + var("InsertionDto", "insertions") + " = sql().insertInto(" +
                quote(s.detail.value_or("TABLE"), dialect_) + ", " + std::to_string(n) + "L)\n";
        line("        .dtos()");
        line("controller.execInsertionsIntoDatabase(" + v + ")");
        break;
      }
      case Mechanism::Kind::Mongo: {
        auto v = "mongoInsertions" + std::to_string(n);
        out_ += "        " + var("MongoInsertionDto", "mongoInsertions") + " = mongo().insertInto(" +
                quote(s.detail.value_or("db"), dialect_) + ", \"collection\")\n";
        line("        .dtos()");
        line("controller.execInsertionsIntoMongoDatabase(" + v + ")");
        break;
      }
      case Mechanism::Kind::WireMock:
        line("wireMockServer.stubFor(any(anyUrl()).willReturn(ok()))");
        break;
      case Mechanism::Kind::Other:
        out_ += "        // setup: " + one_line(s.mechanism.label) + (s.detail ? " " + one_line(*s.detail) : "") + "\n";
        break;
    }
    out_ += "\n";
  }

  void call(const HttpCall& c) {
    std::string verb(to_string(c.verb));
    std::transform(verb.begin(), verb.end(), verb.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    std::vector<std::string> steps;
    steps.push_back("." + verb + "(baseUrlOfSut + " + quote(serialize_url(c.path, c.query), dialect_) + ")");
    bool asserts = c.expected_status || c.content_type || !c.body_assertions.empty();
    if (asserts) steps.push_back(".then()");
    if (c.expected_status) steps.push_back(".statusCode(" + std::to_string(*c.expected_status) + ")");
    if (c.content_type || !c.body_assertions.empty()) steps.push_back(".assertThat()");
    if (c.content_type) steps.push_back(".contentType(" + quote(*c.content_type, dialect_) + ")");
    std::vector<std::string> comments;
    for (const auto& a : c.body_assertions) {
      if (const auto* other = std::get_if<assertion::Other>(&a)) {
        comments.push_back("// " + one_line(other->raw));
        continue;
      }
      steps.push_back(body(a));
    }
    out_ += "        given()\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      out_ += "                " + steps[i];
      if (i + 1 == steps.size() && dialect_ == Dialect::JavaLike) out_ += ";";
      out_ += "\n";
    }
    for (const auto& comment : comments) out_ += "        " + comment + "\n";
    out_ += "\n";
  }

  std::string body(const BodyAssertion& a) const {
    if (std::holds_alternative<assertion::EmptyOrNull>(a)) return ".body(isEmptyOrNullString())";
    if (const auto* lit = std::get_if<assertion::EqualsLiteral>(&a)) return ".body(equalTo(" + quote(lit->literal, dialect_) + "))";
    if (const auto* size = std::get_if<assertion::SizeEquals>(&a)) {
      return ".body(\"size()\", equalTo(" + std::to_string(size->count) + "))";
    }
    const auto& field = std::get<assertion::Field>(a);
    return ".body(" + quote(field.path, dialect_) + ", notNullValue())";
  }

  Dialect dialect_;
  std::string out_;
};

}  // namespace emit_detail

/// A fresh test class in the fluent REST-Assured style, one method per test in suite order.
inline std::string emit_suite(const TestSuite& suite, const std::vector<std::string>& names,
                              Dialect dialect = Dialect::JavaLike) {
  if (names.size() != suite.tests.size()) {
    throw Error("emit_suite: " + std::to_string(names.size()) + " names for " + std::to_string(suite.tests.size()) +
                " tests");
  }
  return emit_detail::Emitter(dialect).suite(suite, names);
}

inline std::string emit_suite(const TestSuite& suite, const std::vector<GeneratedName>& names,
                              Dialect dialect = Dialect::JavaLike) {
  std::vector<std::string> rendered;
  rendered.reserve(names.size());
  for (const auto& n : names) rendered.push_back(n.rendered);
  return emit_suite(suite, rendered, dialect);
}

}  // namespace restnamer
