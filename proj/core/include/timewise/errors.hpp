#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace timewise {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; zero means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Evidence has zero probability under the model, so no posterior exists.
class InconsistentEvidence : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration refused because the instantiation space is too large.
class OracleCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace timewise
