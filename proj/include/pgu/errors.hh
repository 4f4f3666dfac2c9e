#pragma once

#include <stdexcept>
#include <string>

namespace pgu {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input file could not be parsed; carries a 1-based line number when known.
struct ParseError : Error {
  explicit ParseError(const std::string& msg, int line = -1)
      : Error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line(line) {}
  int line;
};

// An enumeration would exceed the configured candidate budget.
struct BudgetError : Error {
  using Error::Error;
};

// An operation's precondition does not hold (bad d, parity violation, ...).
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace pgu
