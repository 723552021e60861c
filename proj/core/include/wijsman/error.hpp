#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wijsman {

enum class ErrorKind {
  PointOutOfSpace,
  MalformedSpec,
  RepSpecMismatch,
  BoundTooLarge,
  EmptySet,
  IndexOutOfRange,
  NotSatisfied,
  NotDiscrete,
  NotFiniteValued,
  MissingSummand,
  SummandNotMissing,
  ZeroPoint,
  NotRepresentable,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

/// Raised by every operation in the library; `kind()` identifies the
/// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wijsman
