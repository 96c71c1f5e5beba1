#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

/// Failure categories shared by the C++ core and the C API. Values are part of
/// the C ABI (see floquet.h); append only.
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  GapClosed = 2,
  DegenerateStart = 3,
  StepTooLarge = 4,
  NumericalBlowup = 5,
  ZeroNorm = 6,
  ConfigMismatch = 7,
  InsufficientData = 8,
  NyquistViolation = 9,
  ParseError = 10,
  ValidationError = 11,
  UnknownKey = 12,
  IoError = 13,
  NonIntegerChern = 14,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace floquet
