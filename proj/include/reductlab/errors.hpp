#pragma once

#include <stdexcept>
#include <string>

namespace reductlab {

/// Input that cannot be parsed or is structurally inconsistent (ragged rows,
/// digits out of range, wrong lengths).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands live in spaces of different dimension or field.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition on the mathematical input does not hold.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration would exceed the configured budget. Never swallowed: the
/// finite objects here stand in for infinite ones, and a silently truncated
/// enumeration would be a wrong answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reductlab
