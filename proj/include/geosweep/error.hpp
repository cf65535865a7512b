#pragma once

#include <stdexcept>
#include <string>

namespace geosweep {

enum class ErrorCode {
  IdenticalCircles,
  NotSimple,
  EmptyDomain,
  UnknownCoordinate,
  UnknownPoint,
  DimensionMismatch,
  DoesNotFit,
  InvalidAutomaton,
  InvalidArgument,
  TooLarge,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` tells callers which
/// precondition was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geosweep
