#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsts {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)) {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& symbol)
      : Error("unknown symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Syntax error in one of the textual input formats. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a model invariant. Carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> violations_;
};

/// The tree construction exceeded its node budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : Error("node budget of " + std::to_string(budget) + " exhausted"), budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// An automaton construction grew past its configured state limit.
class StateLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace wsts
