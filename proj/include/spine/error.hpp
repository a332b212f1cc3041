#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spine {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input that parses but violates a domain rule (non-positive weight, bad fraction, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A backbone that is not a subgraph of the graph it is compared against.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure or a violated spectral identity.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace spine
