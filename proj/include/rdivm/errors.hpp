#pragma once

#include <stdexcept>
#include <string>

namespace rdivm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: syntax, file format, safety, recursion, overlapping deltas.
// Mapped to exit code 1 by the CLI.
struct ValidationError : Error {
  using Error::Error;
};

struct ParseError : ValidationError {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : ValidationError("syntax error at line " + std::to_string(line_) + ", col " +
                        std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

// The requested grounding enumeration exceeds the configured budget.
struct BudgetError : Error {
  using Error::Error;
};

// Broken internal invariant or engine hypothesis: a bug, not bad input.
// Mapped to exit code 2 by the CLI.
struct InternalError : Error {
  using Error::Error;
};

} // namespace rdivm
