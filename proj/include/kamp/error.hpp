#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kamp {

/// Malformed formula or chain text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_token };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(describe(kind, line, column, message)),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string describe(Kind kind, std::size_t line, std::size_t column,
                              const std::string& message) {
    std::string what = kind == Kind::syntax ? "syntax error" : "unknown token";
    what += " at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    return what;
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Position out of range or unassigned variable during evaluation.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or malformed variable scopes in normal-form operations.
class ScopeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input has the wrong number of free variables for the requested operation.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A translation outgrew its configured node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t budget, std::uint64_t observed)
      : std::runtime_error("node budget of " + std::to_string(budget) + " exceeded (" +
                           std::to_string(observed) + " nodes)"),
        budget_(budget),
        observed_(observed) {}

  std::uint64_t budget() const noexcept { return budget_; }
  std::uint64_t observed() const noexcept { return observed_; }

 private:
  std::uint64_t budget_;
  std::uint64_t observed_;
};

}  // namespace kamp
