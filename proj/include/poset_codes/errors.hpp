#pragma once

#include <stdexcept>
#include <string>

namespace poset_codes {

// Every library failure derives from Error so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate an API contract.
struct UsageError : Error {
  using Error::Error;
};

// Arithmetic outside the domain of an operation (e.g. inverting zero).
struct DomainError : Error {
  using Error::Error;
};

struct InvalidPosetError : Error {
  using Error::Error;
};

// An exhaustive scan would exceed the configured enumeration budget.
struct ResourceError : Error {
  using Error::Error;
};

// The input object does not satisfy the operation's precondition
// (wrong code class, degenerate dimension, ...).
struct PreconditionError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

// A constructive search ran out of candidates.
struct ConstructionError : Error {
  using Error::Error;
};

// Two independent computations that must agree did not.
struct InternalError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line), message_(what) {}
  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  std::string message_;
};

}  // namespace poset_codes
