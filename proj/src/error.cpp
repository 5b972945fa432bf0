#include "permbal/error.hpp"

namespace permbal {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TiedCoordinates: return "TiedCoordinates";
    case ErrorCode::BadIndexSet: return "BadIndexSet";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::OddOrder: return "OddOrder";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::ResidueUnknown: return "ResidueUnknown";
    case ErrorCode::TBelowMinimum: return "TBelowMinimum";
    case ErrorCode::ConstructionGap: return "ConstructionGap";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DegreeBudgetExceeded: return "DegreeBudgetExceeded";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InconsistentProfile: return "InconsistentProfile";
    case ErrorCode::ValidationMismatch: return "ValidationMismatch";
    case ErrorCode::AmbiguousValue: return "AmbiguousValue";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotABijection:
    case ErrorCode::ParseError:
      return ErrorCategory::Parse;
    case ErrorCode::ValidationMismatch:
    case ErrorCode::AmbiguousValue:
    case ErrorCode::VerificationFailed:
      return ErrorCategory::Internal;
    default:
      return ErrorCategory::Domain;
  }
}

}  // namespace permbal
