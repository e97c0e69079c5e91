#pragma once

#include <stdexcept>

namespace rfe {

// Raised for arguments that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a noise parameter sits at or beyond the threshold where no
// sample count can guarantee success. The message carries the threshold.
class BoundsUnachievable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rfe
