#pragma once

#include <stdexcept>
#include <string>

namespace msre {

enum class ErrorCode {
  LengthMismatch,
  ProbabilityOutOfRange,
  NotNormalized,
  IncompleteCustomTable,
  ArityMismatch,
  NegativeTime,
  SyntaxError,
  UnknownReference,
  DuplicateId,
  BoundViolation,
  StateSpaceTooLarge,
  StateMismatch,
  CycleDetected,
  InvalidCpt,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Engine-wide exception; every throwing operation reports one of the
/// codes above so callers (and the CLI) can map failures mechanically.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace msre
