#pragma once

#include <stdexcept>
#include <string>

namespace permbal {

// Every failure the library reports carries one of these codes. The CLI maps
// them onto its exit-code contract via category().
enum class ErrorCode {
  // malformed input
  NotABijection,
  ParseError,
  // domain errors: the request is well-formed but has no answer
  TiedCoordinates,
  BadIndexSet,
  KOutOfRange,
  OddOrder,
  NonIntegralResult,
  OrderCapExceeded,
  Inadmissible,
  ResidueUnknown,
  TBelowMinimum,
  ConstructionGap,
  BudgetExceeded,
  DegreeBudgetExceeded,
  Infeasible,
  InconsistentProfile,
  // violated internal contracts
  ValidationMismatch,
  AmbiguousValue,
  VerificationFailed,
};

enum class ErrorCategory { Parse, Domain, Internal };

const char* to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permbal
