#pragma once

#include <stdexcept>
#include <string>

namespace colimit {

/// Malformed input (syntax, unknown generators, inconsistent arguments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text-format error carrying a 1-based source position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError(what + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A formula was requested on inputs that violate its hypotheses
/// (non-normal subgroups, failed connectivity, nonabelian quotient).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource budget (basis size, coset rows, symbol count)
/// would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace colimit
