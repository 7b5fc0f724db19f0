#pragma once

#include <stdexcept>

namespace shiftadd {

/// Violation of the static variable order (child level not below parent).
struct ordering_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Operands belong to different managers.
struct manager_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An evaluation reached a variable the assignment does not cover.
struct incomplete_assignment : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The manager's node limit was hit while constructing a diagram.
struct node_limit_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration request exceeds the guarded problem size.
struct enumeration_too_large : std::length_error {
  using std::length_error::length_error;
};

/// An assignment lies outside the constrained family an operation expects.
struct not_applicable_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A measurement contradicts a proven bound; this falsifies the
/// implementation, not the theorem, so it is an error rather than a warning.
struct theorem_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace shiftadd
