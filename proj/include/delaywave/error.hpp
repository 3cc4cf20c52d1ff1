#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delaywave {

enum class ErrorCode {
  InvalidArgument = 1,
  NoBracket,
  EnvelopeDegenerate,
  NonpositiveRho,
  ResidualNaN,
  SingularJacobian,
  NoConvergence,
  ContinuationStalled,
  MonotonicityLost,
  TailTooShort,
  RootNotFound,
  BlowUp,
  WindowTooShort,
  ParseError,
  UnknownKey,
  UnknownCommand,
  IoError,
};

/// Stable snake_case identifier, used in machine-readable error lines.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace delaywave
