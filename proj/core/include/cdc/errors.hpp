#pragma once

#include <stdexcept>
#include <string>

namespace cdc {

// A named precondition of a construction or bound was violated. `constraint`
// holds the violated condition in the form it is documented, e.g. "t <= k - d/2".
class ConstraintError : public std::invalid_argument {
 public:
  ConstraintError(std::string constraint, const std::string& detail)
      : std::invalid_argument("constraint violated: " + constraint +
                              (detail.empty() ? "" : " (" + detail + ")")),
        constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

// An enumeration or search would exceed a configured budget. Hard error by
// design: budgets are never silently clamped.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what)
      : std::runtime_error("budget exceeded: " + what), budget_(0) {}
  BudgetError(const std::string& what, unsigned long long budget)
      : std::runtime_error("budget exceeded: " + what +
                           " (budget " + std::to_string(budget) + ")"),
        budget_(budget) {}
  unsigned long long budget() const { return budget_; }

 private:
  unsigned long long budget_;
};

// Malformed input file (code files, seed files, plans).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line = -1)
      : std::runtime_error(line >= 0 ? "parse error at line " + std::to_string(line) + ": " + what
                                     : "parse error: " + what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace cdc
