// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace restnamer {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source text could not be parsed. what() is formatted as `file:line:col: message`.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column, std::string message,
             std::string token = {})
      : Error(format(file, line, column, message, token)),
        file_(std::move(file)),
        line_(line),
        column_(column),
        message_(std::move(message)),
        token_(std::move(token)) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& token() const noexcept { return token_; }

 private:
  static std::string format(const std::string& file, std::size_t line, std::size_t column,
                            const std::string& message, const std::string& token) {
    std::string out = file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!token.empty()) out += " near '" + token + "'";
    return out;
  }

  std::string file_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string token_;
};

/// A construct outside the accepted fluent-DSL subset. Recoverable in lenient mode.
class UnsupportedConstruct : public ParseError {
 public:
  using ParseError::ParseError;
};

class MalformedUrl : public Error {
 public:
  using Error::Error;
};

/// IR JSON document does not conform to the schema.
class IrError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration (unknown convention, bad length, bad templates file, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NamingError : public Error {
 public:
  using Error::Error;
};

/// The test has no HTTP call to name or order it by.
class NoFocalCall : public NamingError {
 public:
  using NamingError::NamingError;
};

/// `test_<index>_` alone does not fit the configured length.
class PrefixOverflow : public NamingError {
 public:
  using NamingError::NamingError;
};

class RewriteError : public Error {
 public:
  enum class Kind { AmbiguousIdentifier, DuplicateName, InvalidIdentifier, OverlappingSpans, InvalidPermutation };

  RewriteError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace restnamer
