#pragma once

#include <stdexcept>
#include <string>

namespace leekh {

// Bad user input: malformed PD codes, inconsistent diagrams, unusable field specs.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates an operation's precondition.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configured size caps exceeded (crossing count etc.).
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant (d∘d != 0, inhomogeneous entry, ...).  Seeing
// this means a bug, not bad input.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace leekh
