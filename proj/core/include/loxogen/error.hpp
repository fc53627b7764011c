#pragma once

#include <stdexcept>
#include <string>

namespace loxogen {

/// Raised when caller-supplied data violates an operation's precondition
/// (unknown letter, malformed file, non-rigid input to a rigid-only check...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace loxogen
