#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpl {

enum class ErrorCode {
  NotPrime,
  DegreeOutOfRange,
  NotMonic,
  ZeroDegree,
  ZeroToZero,
  CtxMismatch,
  TooLarge,
  InvalidDegreeSpec,
  NotIrreducible,
  DegreeTooLarge,
  NotARoot,
  SingularRoot,
  PrecisionTooLarge,
  SieveCapExceeded,
  DomainTooSmall,
  EmptyDenominator,
  EmptyInput,
  ParseError,
  CrossCheckFailed,
  DivisionByZero,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fpl
