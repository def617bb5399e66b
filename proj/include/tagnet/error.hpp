#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tagnet {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input. `line` is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The input is valid but too small or too flat for the requested statistic.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A structural guarantee (symmetry, degree sum, ...) does not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace tagnet
