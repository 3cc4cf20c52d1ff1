#include "delaywave/error.hpp"

namespace delaywave {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NoBracket: return "no_bracket";
    case ErrorCode::EnvelopeDegenerate: return "envelope_degenerate";
    case ErrorCode::NonpositiveRho: return "nonpositive_rho";
    case ErrorCode::ResidualNaN: return "residual_nan";
    case ErrorCode::SingularJacobian: return "singular_jacobian";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::ContinuationStalled: return "continuation_stalled";
    case ErrorCode::MonotonicityLost: return "monotonicity_lost";
    case ErrorCode::TailTooShort: return "tail_too_short";
    case ErrorCode::RootNotFound: return "root_not_found";
    case ErrorCode::BlowUp: return "blow_up";
    case ErrorCode::WindowTooShort: return "window_too_short";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::UnknownKey: return "unknown_key";
    case ErrorCode::UnknownCommand: return "unknown_command";
    case ErrorCode::IoError: return "io_error";
  }
  return "unknown";
}

}  // namespace delaywave
