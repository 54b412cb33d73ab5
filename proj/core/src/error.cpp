#include "modlat/error.hpp"

namespace modlat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NonCommutative: return "NonCommutative";
    case ErrorCode::NoUnit: return "NoUnit";
    case ErrorCode::MaximalIdealNotNilpotent: return "MaximalIdealNotNilpotent";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MixedParents: return "MixedParents";
    case ErrorCode::ActionNotRepresentation: return "ActionNotRepresentation";
    case ErrorCode::NotSubmodule: return "NotSubmodule";
    case ErrorCode::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::MultiplePrimes: return "MultiplePrimes";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::InconsistentLevels: return "InconsistentLevels";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotMinimax: return "NotMinimax";
    case ErrorCode::NotFinitelyGenerated: return "NotFinitelyGenerated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::TooLarge:
      return 3;
    case ErrorCode::DecompositionMismatch:
    case ErrorCode::NotBijective:
    case ErrorCode::InconsistentLevels:
      return 4;
    default:
      return 1;
  }
}

}  // namespace modlat
