#pragma once

#include <stdexcept>

namespace jetbound {

/// Raised when caller-supplied data violates an operation's precondition
/// (dimension mismatch, non-primary ideal, singular lattice map, ...).
/// The CLI maps it to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace jetbound
