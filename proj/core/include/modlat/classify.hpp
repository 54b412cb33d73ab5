#pragma once

// Chain, meager and atom criteria for finite modules. Every decision has a
// lattice-scanning version and, where one exists, a structural shortcut.

#include <optional>
#include <vector>

#include "modlat/module.hpp"

namespace modlat {

struct UniserialResult {
  bool uniserial = false;
  std::vector<Submodule> chain;  // filled when uniserial
};
UniserialResult is_uniserial(const FiniteModule& m, std::size_t limit = kDefaultNodeLimit,
                             std::size_t element_budget = kDefaultElementBudget);

/// Uniserial iff every radical layer J^k M / J^{k+1} M has length <= 1.
bool uniserial_by_layers(const FiniteModule& m);

/// N < P with P/N isomorphic to S_f^2 for the simple module S_f of factor f.
struct MeagerWitness {
  Submodule lower;
  Submodule upper;
  std::size_t factor = 0;
};
struct MeagerResult {
  bool meager = true;
  std::optional<MeagerWitness> witness;
};
/// Scans submodules N in canonical order and reports the first N whose
/// quotient has a socle of length >= 2 at some factor.
MeagerResult is_meager(const FiniteModule& m, std::size_t limit = kDefaultNodeLimit,
                       std::size_t element_budget = kDefaultElementBudget);
/// Every primary component is uniserial.
bool meager_fast_path(const FiniteModule& m);

/// Minimal nonzero submodules.
std::vector<Submodule> discriminating_atoms(const FiniteModule& m, std::size_t limit = kDefaultNodeLimit,
                                            std::size_t element_budget = kDefaultElementBudget);

enum class SinglePrimeClass { FiniteLengthChain, NotMeager };
const char* to_string(SinglePrimeClass c) noexcept;
/// Throws MultiplePrimes unless M has exactly one associated prime.
SinglePrimeClass classify_single_prime(const FiniteModule& m, std::size_t limit = kDefaultNodeLimit,
                                       std::size_t element_budget = kDefaultElementBudget);

struct ClassificationReport {
  bool uniserial = false;
  bool meager = false;
  bool single_associated_prime = false;
  bool fast_path_agrees = false;
  std::size_t submodule_count = 0;
  std::vector<std::size_t> associated;
  std::vector<Submodule> atoms;
  std::optional<MeagerWitness> meager_witness;
  std::vector<Submodule> chain;
};
ClassificationReport classify(const FiniteModule& m, std::size_t limit = kDefaultNodeLimit,
                              std::size_t element_budget = kDefaultElementBudget);

}  // namespace modlat
