#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsehard {

// Bad parameters, mismatched dimensions, malformed input. CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or row cap would be exceeded. Raised before any work is done.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Full column rank was required but not found.
class RankDeficient : public std::runtime_error {
 public:
  RankDeficient(std::size_t deficient_columns, const std::string& what)
      : std::runtime_error(what), deficient_columns_(deficient_columns) {}
  std::size_t deficient_columns() const { return deficient_columns_; }

 private:
  std::size_t deficient_columns_;
};

// A structural claim about an instance did not hold (e.g. a strategy that
// was supposed to win every round does not). CLI exit code 3.
class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input; carries the 1-based line number.
class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t line, const std::string& message)
      : InvalidArgument("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sparsehard
