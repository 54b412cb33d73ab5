#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modlat {

enum class ErrorCode {
  NonAssociative,
  NonCommutative,
  NoUnit,
  MaximalIdealNotNilpotent,
  TooLarge,
  MixedParents,
  ActionNotRepresentation,
  NotSubmodule,
  DecompositionMismatch,
  BudgetExceeded,
  MultiplePrimes,
  NotBijective,
  InconsistentLevels,
  NotStabilized,
  Unsupported,
  NotMinimax,
  NotFinitelyGenerated,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `count()` carries the partial count
/// for BudgetExceeded and the requested depth for NotStabilized.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t count = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        count_(count) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t count() const noexcept { return count_; }

 private:
  ErrorCode code_;
  std::size_t count_;
};

/// Exit status used by the command-line front-end for a given failure.
int exit_status(ErrorCode code) noexcept;

}  // namespace modlat
