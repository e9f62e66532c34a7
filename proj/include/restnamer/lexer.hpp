// SPDX-License-Identifier: Apache-2.0
#pragma once

// Tokenizer for the JVM-language subset we read: identifiers, string/char
// literals, numbers and single-character punctuation. Comments and whitespace
// are skipped; every token keeps its byte span in the original text.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restnamer/errors.hpp"
#include "restnamer/model.hpp"

namespace restnamer {

enum class TokenKind { Identifier, String, Char, Number, Punct };

struct Token {
  TokenKind kind = TokenKind::Punct;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;             // identifier name, decoded literal value, or the raw punctuation/number
  bool newline_before = false;  // a line break separates this token from the previous one
  bool has_template = false;    // Kotlin string with `$name` / `${...}` interpolation
  bool interior_template = false;  // an interpolation follows literal text (not just a leading base URL)

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(char c) const { return kind == TokenKind::Punct && text.size() == 1 && text[0] == c; }
  bool is_ident(std::string_view t) const { return is(TokenKind::Identifier, t); }
};

/// Maps byte offsets to 1-based line/column positions.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') starts_.push_back(i + 1);
    }
  }

  std::pair<std::size_t, std::size_t> locate(std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    auto line = static_cast<std::size_t>(it - starts_.begin());
    return {line, offset - starts_[line - 1] + 1};
  }

 private:
  std::vector<std::size_t> starts_;
};

namespace lex_detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
inline bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

class Lexer {
 public:
  Lexer(std::string_view text, Dialect dialect, std::string file)
      : text_(text), dialect_(dialect), file_(std::move(file)), lines_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool newline = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        newline = true;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        continue;
      }
      if (starts_with("//")) {
        auto eol = text_.find('\n', pos_);
        pos_ = eol == std::string_view::npos ? text_.size() : eol;
        continue;
      }
      if (starts_with("/*")) {
        skip_block_comment();
        continue;
      }
      Token tok = next();
      tok.newline_before = newline;
      newline = false;
      out.push_back(std::move(tok));
    }
    return out;
  }

 private:
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  [[noreturn]] void fail(std::size_t at, const std::string& message, std::string token = {}) const {
    auto [line, col] = lines_.locate(at);
    throw ParseError(file_, line, col, message, std::move(token));
  }

  void skip_block_comment() {
    auto start = pos_;
    // Kotlin block comments nest; Java ones do not.
    int depth = 0;
    while (pos_ < text_.size()) {
      if (starts_with("/*") && (depth == 0 || dialect_ == Dialect::KotlinLike)) {
        ++depth;
        pos_ += 2;
      } else if (starts_with("*/")) {
        pos_ += 2;
        if (--depth == 0) return;
      } else {
        ++pos_;
      }
    }
    fail(start, "unterminated block comment");
  }

  Token next() {
    auto start = pos_;
    auto c = static_cast<unsigned char>(text_[pos_]);
    if (c == '`') {
      auto close = text_.find('`', pos_ + 1);
      if (close == std::string_view::npos || text_.substr(pos_, close - pos_).find('\n') != std::string_view::npos) {
        fail(start, "unterminated backtick identifier");
      }
      pos_ = close + 1;
      return {TokenKind::Identifier, start, pos_, std::string(text_.substr(start + 1, close - start - 1))};
    }
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return {TokenKind::Identifier, start, pos_, std::string(text_.substr(start, pos_ - start))};
    }
    if (std::isdigit(c)) {
      while (pos_ < text_.size()) {
        auto d = static_cast<unsigned char>(text_[pos_]);
        bool dot_digit = d == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
        if (!(std::isalnum(d) || d == '_' || dot_digit)) break;
        ++pos_;
      }
      return {TokenKind::Number, start, pos_, std::string(text_.substr(start, pos_ - start))};
    }
    if (starts_with("\"\"\"")) return triple_string();
    if (c == '"') return string_literal();
    if (c == '\'') return char_literal();
    ++pos_;
    return {TokenKind::Punct, start, pos_, std::string(1, static_cast<char>(c))};
  }

  Token triple_string() {
    auto start = pos_;
    pos_ += 3;
    auto close = text_.find("\"\"\"", pos_);
    if (close == std::string_view::npos) fail(start, "unterminated text block");
    // Extra quotes directly before the closing delimiter belong to the content.
    while (close + 3 < text_.size() && text_[close + 3] == '"') ++close;
    Token tok{TokenKind::String, start, close + 3, std::string(text_.substr(pos_, close - pos_))};
    if (dialect_ == Dialect::KotlinLike) tok.has_template = tok.interior_template = contains_template(tok.text);
    pos_ = close + 3;
    return tok;
  }

  static bool contains_template(std::string_view s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == '$' && (s[i + 1] == '{' || ident_start(static_cast<unsigned char>(s[i + 1])))) return true;
    }
    return false;
  }

  Token string_literal() {
    auto start = pos_++;
    Token tok{TokenKind::String, start, start, {}};
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') fail(start, "unterminated string literal");
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        decode_escape(tok.text, start);
        continue;
      }
      if (dialect_ == Dialect::KotlinLike && c == '$' && pos_ + 1 < text_.size()) {
        char n = text_[pos_ + 1];
        bool brace = n == '{';
        if (brace || (ident_start(static_cast<unsigned char>(n)) && n != '$')) {
          tok.has_template = true;
          if (!tok.text.empty()) tok.interior_template = true;
          if (brace) {
            skip_template_expression(start);
          } else {
            ++pos_;
            while (pos_ < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '$') ++pos_;
          }
          continue;
        }
      }
      tok.text += c;
      ++pos_;
    }
    tok.end = pos_;
    return tok;
  }

  void skip_template_expression(std::size_t literal_start) {
    pos_ += 2;
    int depth = 1;
    while (pos_ < text_.size() && depth > 0) {
      char c = text_[pos_];
      if (c == '"') {
        string_literal();
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}') --depth;
      ++pos_;
    }
    if (depth != 0) fail(literal_start, "unterminated string template");
  }

  Token char_literal() {
    auto start = pos_++;
    Token tok{TokenKind::Char, start, start, {}};
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') fail(start, "unterminated character literal");
      char c = text_[pos_];
      if (c == '\'') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        decode_escape(tok.text, start);
        continue;
      }
      tok.text += c;
      ++pos_;
    }
    tok.end = pos_;
    return tok;
  }

  void decode_escape(std::string& out, std::size_t literal_start) {
    if (pos_ + 1 >= text_.size()) fail(literal_start, "unterminated string literal");
    char e = text_[pos_ + 1];
    pos_ += 2;
    switch (e) {
      case 'n': out += '\n'; return;
      case 't': out += '\t'; return;
      case 'r': out += '\r'; return;
      case 'b': out += '\b'; return;
      case 'f': out += '\f'; return;
      case 's': out += ' '; return;
      case '0': case '1': case '2': case '3': case '4': case '5': case '6': case '7': {
        int value = e - '0';
        for (int k = 0; k < 2 && pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '7'; ++k) {
          int next = value * 8 + (text_[pos_] - '0');
          if (next > 0377) break;
          value = next;
          ++pos_;
        }
        append_utf8(out, static_cast<std::uint32_t>(value));
        return;
      }
      case 'u': {
        while (pos_ < text_.size() && text_[pos_] == 'u') ++pos_;
        if (pos_ + 4 > text_.size()) fail(literal_start, "truncated unicode escape");
        std::uint32_t cp = 0;
        for (int k = 0; k < 4; ++k) {
          auto h = static_cast<unsigned char>(text_[pos_ + k]);
          if (!std::isxdigit(h)) fail(pos_, "invalid unicode escape");
          cp = cp * 16 + static_cast<std::uint32_t>(std::isdigit(h) ? h - '0' : std::tolower(h) - 'a' + 10);
        }
        pos_ += 4;
        append_utf8(out, cp);
        return;
      }
      case '"': case '\'': case '\\': case '$':
        out += e;
        return;
      default:
        fail(pos_ - 2, "invalid escape sequence", std::string("\\") + e);
    }
  }

  std::string_view text_;
  Dialect dialect_;
  std::string file_;
  LineIndex lines_;
  std::size_t pos_ = 0;
};

}  // namespace lex_detail

inline std::vector<Token> tokenize(std::string_view text, Dialect dialect = Dialect::JavaLike,
                                   const std::string& file = "<input>") {
  return lex_detail::Lexer(text, dialect, file).run();
}

}  // namespace restnamer
