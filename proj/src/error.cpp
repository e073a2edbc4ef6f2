#include "fpl/error.hpp"

namespace fpl {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::ZeroDegree: return "ZeroDegree";
    case ErrorCode::ZeroToZero: return "ZeroToZero";
    case ErrorCode::CtxMismatch: return "CtxMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidDegreeSpec: return "InvalidDegreeSpec";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::SingularRoot: return "SingularRoot";
    case ErrorCode::PrecisionTooLarge: return "PrecisionTooLarge";
    case ErrorCode::SieveCapExceeded: return "SieveCapExceeded";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::EmptyDenominator: return "EmptyDenominator";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
  }
  return "Unknown";
}

}  // namespace fpl
