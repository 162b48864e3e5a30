#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfk {

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  EmptyEdgeList,
  NegativeVertex,
  ParseError,
  IoError,
  Disconnected,
  NoBoundary,
  NoInterior,
  InvalidParams,
  TooLarge,
  NotABijection,
  InvalidSpec,
  BadExponent,
  BadFunction,
  ZeroFunction,
  NotInCB,
  NumericalFailure,
  NotConverged,
  MultiplicityViolation,
  TooManyInteriorVertices,
  EmptySet,
  NotInterior,
  NotPositiveInterior,
  BadPath,
  NotApplicable,
  NotPendant,
  InadmissibleRemainder,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stable, parsable name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pfk
