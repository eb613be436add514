#pragma once

#include <stdexcept>
#include <string>

namespace skl {

/// Rejected input: violated precondition, malformed config, bad parameter.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// A kernel was evaluated at its singularity.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace skl
