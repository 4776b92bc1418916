#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace conseq {

using PredicateId = std::uint32_t;
using FunctionId = std::uint32_t;
using ContextId = std::uint32_t;

inline constexpr std::uint32_t kInvalidId = 0xffffffffu;

/// Input could not be parsed; carries a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A configured clause-count or wall-clock cap was hit before saturation
/// finished. Results derived from an aborted run are indeterminate.
class ResourceLimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal contract was violated. Maps to exit code 3 in the CLI.
class InvariantViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

#define CONSEQ_CHECK(cond, msg)                  \
  do {                                           \
    if (!(cond)) {                               \
      throw ::conseq::InvariantViolation((msg)); \
    }                                            \
  } while (0)

}  // namespace conseq
