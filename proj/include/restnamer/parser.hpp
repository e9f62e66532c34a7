// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reads REST-Assured style test classes (Java or Kotlin) into the IR.
//
// Accepted shape, per @Test method:
//   given() [.baseUri(..) .accept(..) .header(..) .headers(..) .contentType(..) .body(..) .when() .and()]
//     .<verb>(url)
//     [.then() [.statusCode(n) .assertThat() .and() .contentType(..) .body(..)]]
// Anything else in a given() chain is an UnsupportedConstruct. Other statements
// are only inspected for data-insertion / mocking setup.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restnamer/errors.hpp"
#include "restnamer/lexer.hpp"
#include "restnamer/model.hpp"
#include "restnamer/url.hpp"

namespace restnamer {

struct SourceFile {
  std::string path;
  std::string text;
  Dialect dialect = Dialect::JavaLike;
};

inline Dialect dialect_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view s) { return path.size() >= s.size() && path.substr(path.size() - s.size()) == s; };
  return ends_with(".kt") || ends_with(".kts") ? Dialect::KotlinLike : Dialect::JavaLike;
}

/// One @Test method: annotations, signature and body, as byte spans into the file text.
struct MethodBlock {
  std::string name;
  Span annotation_span;
  Span body_span;  // from '{' through '}'
  Span full_span;

  /// Bytes between the annotations and the body: modifiers, name, parameters, throws clause.
  Span signature_span() const { return {annotation_span.end, body_span.begin}; }

  bool operator==(const MethodBlock&) const = default;
};

/// Keyword-table entry mapping a statement shape to a setup mechanism.
struct SetupRule {
  enum class Match {
    CallChain,           // token sequence, e.g. "sql().insertInto"
    IdentifierContains,  // any identifier containing the pattern
  };
  Match match = Match::CallChain;
  std::string pattern;
  Mechanism mechanism;
};

inline std::vector<SetupRule> default_setup_rules() {
  return {
      {SetupRule::Match::CallChain, "sql().insertInto", Mechanism::sql()},
      {SetupRule::Match::CallChain, "mongo()", Mechanism::mongo()},
      {SetupRule::Match::IdentifierContains, "wireMock", Mechanism::wiremock()},
      {SetupRule::Match::IdentifierContains, "WireMock", Mechanism::wiremock()},
  };
}

struct ParseOptions {
  bool lenient = false;
  std::vector<SetupRule> setup_rules = default_setup_rules();
};

struct Diagnostic {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": warning: " + message;
  }
};

struct ParseResult {
  TestSuite suite;
  std::vector<MethodBlock> blocks;  // parallel to suite.tests
  std::vector<Diagnostic> warnings;
};

namespace parse_detail {

using Range = std::pair<std::size_t, std::size_t>;  // token indices [first, last)

inline bool is_valid_utf8(std::string_view s, std::size_t& bad_offset) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
      bad_offset = i;
      return false;
    }
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) {
        bad_offset = i;
        return false;
      }
    }
    i += len;
  }
  return true;
}

inline std::vector<Mechanism> detect_setup_in(const std::vector<Token>& toks, Range range,
                                              const std::vector<SetupRule>& rules, std::vector<SetupAction>& out) {
  std::vector<Mechanism> found;
  for (const auto& rule : rules) {
    if (std::find(found.begin(), found.end(), rule.mechanism) != found.end()) continue;
    std::optional<SetupAction> action;
    if (rule.match == SetupRule::Match::IdentifierContains) {
      for (auto k = range.first; k < range.second; ++k) {
        if (toks[k].kind == TokenKind::Identifier && toks[k].text.find(rule.pattern) != std::string::npos) {
          action = SetupAction{rule.mechanism, std::nullopt};
          break;
        }
      }
    } else {
      auto pattern = tokenize(rule.pattern);
      if (pattern.empty()) continue;
      for (auto k = range.first; k + pattern.size() <= range.second && !action; ++k) {
        bool same = true;
        for (std::size_t p = 0; p < pattern.size() && same; ++p) {
          same = toks[k + p].kind == pattern[p].kind && toks[k + p].text == pattern[p].text;
        }
        if (!same) continue;
        SetupAction a{rule.mechanism, std::nullopt};
        auto after = k + pattern.size();
        if (after + 1 < range.second && toks[after].is_punct('(') && toks[after + 1].kind == TokenKind::String) {
          a.detail = toks[after + 1].text;
        }
        action = std::move(a);
      }
    }
    if (action) {
      found.push_back(action->mechanism);
      out.push_back(std::move(*action));
    }
  }
  return found;
}

class SourceParser {
 public:
  SourceParser(const SourceFile& file, const ParseOptions& options)
      : file_(file), options_(options), lines_(file.text) {}

  ParseResult run() {
    std::size_t bad = 0;
    if (!is_valid_utf8(file_.text, bad)) fail_at(bad, "file is not valid UTF-8");
    toks_ = tokenize(file_.text, file_.dialect, file_.path);

    ParseResult result;
    result.suite.name = class_name();
    result.suite.source_dialect = file_.dialect;

    std::size_t i = 0;
    while (i < toks_.size()) {
      if (!(is_punct(i, '@') && is_ident_at(i + 1) && toks_[i + 1].text != "interface")) {
        ++i;
        continue;
      }
      auto run = annotation_run(i);
      if (!run.has_test) {
        i = run.end;
        continue;
      }
      auto [block, body] = method_after(run);
      TestCase test;
      test.original_name = block.name;
      test.creation_index = result.suite.tests.size();
      test.source_span = block.full_span;
      parse_body(body, test);
      result.suite.tests.push_back(std::move(test));
      i = body.second + 1;
      result.blocks.push_back(std::move(block));
    }
    result.warnings = std::move(warnings_);
    return result;
  }

 private:
  struct AnnotationRun {
    std::size_t begin = 0;
    std::size_t end = 0;  // token index past the last annotation
    bool has_test = false;
  };

  struct Step {
    std::string name;
    std::size_t name_tok = 0;
    std::size_t open = 0;
    std::size_t close = 0;
    std::vector<Range> args;
  };

  enum class Phase { Request, Sent, Then };

  [[noreturn]] void fail_at(std::size_t offset, const std::string& message, std::string token = {}) const {
    auto [line, col] = lines_.locate(offset);
    throw ParseError(file_.path, line, col, message, std::move(token));
  }
  [[noreturn]] void fail(std::size_t tok, const std::string& message) const {
    if (tok >= toks_.size()) fail_at(file_.text.size(), message, "<end of file>");
    fail_at(toks_[tok].begin, message, toks_[tok].text);
  }

  bool is_punct(std::size_t k, char c) const { return k < toks_.size() && toks_[k].is_punct(c); }
  bool is_ident_at(std::size_t k) const { return k < toks_.size() && toks_[k].kind == TokenKind::Identifier; }

  std::string_view source(Range r) const {
    if (r.first >= r.second) return {};
    return std::string_view(file_.text).substr(toks_[r.first].begin, toks_[r.second - 1].end - toks_[r.first].begin);
  }

  std::string class_name() const {
    for (std::size_t k = 0; k + 1 < toks_.size(); ++k) {
      if (toks_[k].is_ident("class") && is_ident_at(k + 1) && !(k > 0 && is_punct(k - 1, '.'))) return toks_[k + 1].text;
    }
    auto path = std::string_view(file_.path);
    auto slash = path.find_last_of("/\\");
    if (slash != std::string_view::npos) path.remove_prefix(slash + 1);
    return std::string(path.substr(0, path.find('.')));
  }

  /// Index of the bracket closing the one at `open`.
  std::size_t match_close(std::size_t open) const {
    std::vector<char> expected;
    for (auto k = open; k < toks_.size(); ++k) {
      const auto& t = toks_[k];
      if (t.kind != TokenKind::Punct) continue;
      char c = t.text[0];
      if (c == '(') expected.push_back(')');
      else if (c == '[') expected.push_back(']');
      else if (c == '{') expected.push_back('}');
      else if (c == ')' || c == ']' || c == '}') {
        if (expected.empty() || expected.back() != c) fail(k, std::string("unbalanced '") + c + "'");
        expected.pop_back();
        if (expected.empty()) return k;
      }
    }
    fail(open, "unclosed '" + toks_[open].text + "'");
  }

  AnnotationRun annotation_run(std::size_t i) const {
    AnnotationRun run{i, i, false};
    auto k = i;
    while (is_punct(k, '@') && is_ident_at(k + 1)) {
      k += 1;
      std::string last = toks_[k].text;
      ++k;
      // `@get:Rule` use-site targets and qualified names like `@org.junit.Test`
      while ((is_punct(k, '.') || is_punct(k, ':')) && is_ident_at(k + 1)) {
        last = toks_[k + 1].text;
        k += 2;
      }
      if (is_punct(k, '(')) k = match_close(k) + 1;
      if (last == "Test") run.has_test = true;
    }
    run.end = k;
    return run;
  }

  std::pair<MethodBlock, Range> method_after(const AnnotationRun& run) const {
    auto k = run.end;
    std::optional<std::size_t> name_tok;
    for (; k < toks_.size(); ++k) {
      const auto& t = toks_[k];
      if (t.is_punct('(') && k > run.end && is_ident_at(k - 1)) {
        name_tok = k - 1;
        break;
      }
      if (t.is_punct(';') || t.is_punct('{') || t.is_punct('}') || t.is_punct('=')) break;
    }
    if (!name_tok) fail(run.begin, "@Test annotation is not followed by a method declaration");
    auto params_close = match_close(*name_tok + 1);
    auto m = params_close + 1;
    while (m < toks_.size() && !is_punct(m, '{')) {
      if (is_punct(m, ';') || is_punct(m, '=') || is_punct(m, '}')) {
        fail(m, "test method '" + toks_[*name_tok].text + "' has no block body");
      }
      ++m;
    }
    if (m >= toks_.size()) fail(m, "test method '" + toks_[*name_tok].text + "' has no body");
    auto body_close = match_close(m);

    MethodBlock block;
    block.name = toks_[*name_tok].text;
    block.annotation_span = {toks_[run.begin].begin, toks_[run.end - 1].end};
    block.body_span = {toks_[m].begin, toks_[body_close].end};
    block.full_span = {block.annotation_span.begin, block.body_span.end};
    return {std::move(block), Range{m + 1, body_close}};
  }

  static bool continues_line(const Token& prev, const Token& next) {
    if (next.is_punct('.') || next.is_punct('?')) return true;
    if (prev.kind != TokenKind::Punct) return false;
    return std::string_view(".+-*/=,(&|:!<>?").find(prev.text[0]) != std::string_view::npos;
  }

  std::vector<Range> statements(Range body) const {
    std::vector<Range> out;
    auto start = body.first;
    int depth = 0;
    auto close = [&](std::size_t end) {
      if (end > start) out.emplace_back(start, end);
    };
    for (auto k = body.first; k < body.second; ++k) {
      const auto& t = toks_[k];
      if (file_.dialect == Dialect::KotlinLike && depth == 0 && k > start && t.newline_before &&
          !continues_line(toks_[k - 1], t)) {
        close(k);
        start = k;
      }
      if (t.kind != TokenKind::Punct) continue;
      char c = t.text[0];
      if (c == '(' || c == '[') ++depth;
      if ((c == ')' || c == ']') && depth > 0) --depth;
      if (depth == 0 && (c == ';' || c == '{' || c == '}')) {
        close(k);
        start = k + 1;
      }
    }
    close(body.second);
    return out;
  }

  void parse_body(Range body, TestCase& test) {
    for (auto stmt : statements(body)) {
      detect_setup_in(toks_, stmt, options_.setup_rules, test.setup);
      for (auto k = stmt.first; k + 2 < stmt.second;) {
        if (toks_[k].is_ident("given") && is_punct(k + 1, '(') && is_punct(k + 2, ')')) {
          auto [call, next] = parse_chain(k, stmt.second);
          test.calls.push_back(std::move(call));
          k = next;
        } else {
          ++k;
        }
      }
    }
  }

  std::vector<Range> split_args(std::size_t open, std::size_t close) const {
    std::vector<Range> args;
    if (close == open + 1) return args;
    auto start = open + 1;
    for (auto k = open + 1; k < close; ++k) {
      const auto& t = toks_[k];
      if (t.is_punct('(') || t.is_punct('[') || t.is_punct('{')) {
        k = match_close(k);
      } else if (t.is_punct(',')) {
        args.emplace_back(start, k);
        start = k + 1;
      }
    }
    args.emplace_back(start, close);
    return args;
  }

  std::pair<HttpCall, std::size_t> parse_chain(std::size_t given, std::size_t limit) {
    std::vector<Step> steps;
    auto pos = given;
    while (true) {
      Step step;
      step.name = toks_[pos].text;
      step.name_tok = pos;
      step.open = pos + 1;
      step.close = match_close(step.open);
      if (step.close >= limit) fail(step.open, "unbalanced call in REST-Assured chain");
      step.args = split_args(step.open, step.close);
      steps.push_back(std::move(step));
      pos = steps.back().close + 1;
      if (!(pos < limit && is_punct(pos, '.'))) break;
      if (!is_ident_at(pos + 1) || pos + 1 >= limit) fail(pos + 1, "expected a method name after '.' in REST-Assured chain");
      if (!is_punct(pos + 2, '(') || pos + 2 >= limit) {
        fail(pos + 1, "expected '(' after '" + toks_[pos + 1].text + "' in REST-Assured chain");
      }
      pos += 1;
    }

    HttpCall call;
    Phase phase = Phase::Request;
    bool has_verb = false;
    for (std::size_t s = 1; s < steps.size(); ++s) {
      const auto& step = steps[s];
      auto verb = is_verb_step(step.name);
      switch (phase) {
        case Phase::Request:
          if (verb) {
            read_url(step, call);
            call.verb = *verb;
            has_verb = true;
            phase = Phase::Sent;
          } else if (step.name == "then") {
            fail(step.name_tok, "then() reached before any HTTP verb in REST-Assured chain");
          } else if (!is_request_step(step.name)) {
            unsupported(step, call, "unsupported request step '" + step.name + "'");
          }
          break;
        case Phase::Sent:
          if (step.name == "then") {
            phase = Phase::Then;
          } else if (verb) {
            fail(step.name_tok, "second HTTP verb in one REST-Assured chain");
          } else {
            unsupported(step, call, "unsupported step '" + step.name + "' after the HTTP verb");
          }
          break;
        case Phase::Then:
          read_then_step(step, call);
          break;
      }
    }
    if (!has_verb) fail(given, "REST-Assured chain has no HTTP verb");
    return {std::move(call), pos};
  }

  static std::optional<HttpVerb> is_verb_step(std::string_view name) {
    for (auto v : kAllVerbs) {
      std::string lower(to_string(v));
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (name == lower) return v;
    }
    return std::nullopt;
  }

  static bool is_request_step(std::string_view name) {
    static constexpr std::string_view kAllowed[] = {"baseUri", "accept", "header", "headers", "contentType", "body", "when", "and"};
    return std::find(std::begin(kAllowed), std::end(kAllowed), name) != std::end(kAllowed);
  }

  std::string step_text(const Step& step) const { return std::string(source({step.name_tok, step.close + 1})); }

  void unsupported(const Step& step, HttpCall& call, const std::string& message) {
    unsupported_at(step.name_tok, step_text(step), call, message);
  }

  void unsupported_at(std::size_t tok, std::string raw, HttpCall& call, const std::string& message) {
    auto [line, col] = lines_.locate(toks_[tok].begin);
    if (!options_.lenient) throw UnsupportedConstruct(file_.path, line, col, message, toks_[tok].text);
    warnings_.push_back({file_.path, line, col, message});
    call.body_assertions.push_back(assertion::Other{std::move(raw)});
  }

  bool single_token(Range r, TokenKind kind) const { return r.second == r.first + 1 && toks_[r.first].kind == kind; }

  bool plain_string(Range r) const { return single_token(r, TokenKind::String) && !toks_[r.first].has_template; }

  static std::optional<std::int64_t> integer_literal(std::string_view text) {
    if (!text.empty() && (text.back() == 'L' || text.back() == 'l')) text.remove_suffix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
  }

  void read_url(const Step& step, HttpCall& call) {
    if (step.args.empty()) fail(step.name_tok, "HTTP verb '" + step.name + "' has no URL argument");
    auto arg = step.args.front();
    call.raw_url = std::string(source(arg));

    // Operands of top-level '+'; leading non-literal operands are base-URL variables.
    std::vector<Range> operands;
    auto start = arg.first;
    for (auto k = arg.first; k < arg.second; ++k) {
      if (toks_[k].is_punct('(') || toks_[k].is_punct('[')) {
        k = match_close(k);
      } else if (toks_[k].is_punct('+')) {
        operands.emplace_back(start, k);
        start = k + 1;
      }
    }
    operands.emplace_back(start, arg.second);

    std::string url;
    bool seen_literal = false;
    for (const auto& op : operands) {
      if (single_token(op, TokenKind::String) && !toks_[op.first].interior_template) {
        url += toks_[op.first].text;
        seen_literal = true;
      } else if (seen_literal) {
        unsupported_at(op.first < op.second ? op.first : step.name_tok, std::string(source(op)), call,
                       "non-literal URL fragment after the path");
      }
    }
    if (!seen_literal) {
      unsupported_at(arg.first, call.raw_url, call, "URL has no string literal path");
      url = "/";
    }
    for (std::string_view scheme : {"http://", "https://"}) {
      if (url.rfind(scheme, 0) == 0) {
        auto slash = url.find_first_of("/?#", scheme.size());
        url = slash == std::string::npos ? "/" : (url[slash] == '/' ? url.substr(slash) : "/" + url.substr(slash));
      }
    }
    try {
      auto parsed = parse_url(url);
      call.path = std::move(parsed.path);
      call.query = std::move(parsed.query);
    } catch (const MalformedUrl& e) {
      fail(arg.first, e.what());
    }
  }

  /// `name(args)` possibly qualified (`Matchers.equalTo(..)`) spanning the whole range.
  std::optional<std::pair<std::string, std::vector<Range>>> matcher_call(Range r) const {
    if (r.second <= r.first + 2 || !toks_[r.second - 1].is_punct(')')) return std::nullopt;
    auto k = r.first;
    if (!is_ident_at(k)) return std::nullopt;
    while (is_punct(k + 1, '.') && is_ident_at(k + 2)) k += 2;
    if (!is_punct(k + 1, '(')) return std::nullopt;
    auto close = match_close(k + 1);
    if (close != r.second - 1) return std::nullopt;
    return std::make_pair(toks_[k].text, split_args(k + 1, close));
  }

  BodyAssertion body_assertion(const Step& step) const {
    const auto& args = step.args;
    assertion::Other other{step_text(step)};
    if (args.size() == 1) {
      auto m = matcher_call(args[0]);
      if (!m) return other;
      const auto& [name, margs] = *m;
      if ((name == "isEmptyOrNullString" || name == "emptyOrNullString") && margs.empty()) return assertion::EmptyOrNull{};
      if (name == "equalTo" && margs.size() == 1 && plain_string(margs[0])) {
        return assertion::EqualsLiteral{toks_[margs[0].first].text};
      }
      return other;
    }
    if (args.size() >= 2 && plain_string(args[0])) {
      const auto& field = toks_[args[0].first].text;
      if (field == "size()") {
        auto m = matcher_call(args[1]);
        if (m && m->first == "equalTo" && m->second.size() == 1 && single_token(m->second[0], TokenKind::Number)) {
          if (auto n = integer_literal(toks_[m->second[0].first].text); n && *n >= 0) return assertion::SizeEquals{*n};
        }
        return other;
      }
      if (field.empty()) return other;
      return assertion::Field{field};
    }
    return other;
  }

  void read_then_step(const Step& step, HttpCall& call) {
    if (step.name == "statusCode") {
      std::optional<std::int64_t> code;
      if (step.args.size() == 1 && single_token(step.args[0], TokenKind::Number)) {
        code = integer_literal(toks_[step.args[0].first].text);
      }
      if (!code) {
        unsupported(step, call, "statusCode() argument is not an integer literal");
        return;
      }
      if (*code < 100 || *code > 599) fail(step.args[0].first, "status code outside [100, 599]");
      call.expected_status = static_cast<int>(*code);
    } else if (step.name == "contentType") {
      if (step.args.size() == 1 && plain_string(step.args[0])) {
        call.content_type = toks_[step.args[0].first].text;
      } else {
        call.content_type = std::string(source({step.open + 1, step.close}));
      }
    } else if (step.name == "body") {
      call.body_assertions.push_back(body_assertion(step));
    } else if (step.name != "assertThat" && step.name != "and") {
      unsupported(step, call, "unsupported assertion step '" + step.name + "'");
    }
  }

  const SourceFile& file_;
  const ParseOptions& options_;
  LineIndex lines_;
  std::vector<Token> toks_;
  std::vector<Diagnostic> warnings_;
};

}  // namespace parse_detail

/// Setup mechanisms used by one statement, at most one action per mechanism.
inline std::vector<SetupAction> detect_setup(std::string_view chain_text,
                                             const std::vector<SetupRule>& rules = default_setup_rules(),
                                             Dialect dialect = Dialect::JavaLike) {
  auto toks = tokenize(chain_text, dialect);
  std::vector<SetupAction> out;
  parse_detail::detect_setup_in(toks, {0, toks.size()}, rules, out);
  return out;
}

/// One TestCase and one MethodBlock per @Test method, in textual order.
inline ParseResult parse_source(const SourceFile& file, const ParseOptions& options = {}) {
  return parse_detail::SourceParser(file, options).run();
}

}  // namespace restnamer
