#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aq {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SortError : public Error {
 public:
  using Error::Error;
};

class DuplicateNameError : public Error {
 public:
  using Error::Error;
};

// Raised when a check named in the message fails (exit code 1 in the CLI).
class CheckFailed : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  OverflowError() : Error("integer overflow") {}
};

// Step counter shared by the enumeration-backed algorithms.
class Budget {
 public:
  static constexpr std::uint64_t kDefaultSteps = 10'000'000;

  explicit Budget(std::uint64_t limit = kDefaultSteps) : limit_(limit) {}

  void spend(std::uint64_t steps = 1) {
    used_ += steps;
    if (used_ > limit_) throw BudgetExhausted("budget exhausted after " + std::to_string(limit_) + " steps");
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

}  // namespace aq
