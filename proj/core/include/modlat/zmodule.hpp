#pragma once

// Symbolic abelian groups built from finitely many summands Z, Z/p^k,
// Prufer(p), Z[1/S] and Q, and decisions about their subgroup lattices.
// Multiplicities may carry the marker `inf` to describe infinite direct sums.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modlat/cardinal.hpp"
#include "modlat/module.hpp"

namespace modlat {

struct Multiplicity {
  bool infinite = false;
  std::uint64_t n = 0;

  static Multiplicity inf() { return {true, 0}; }
  bool zero() const noexcept { return !infinite && n == 0; }
  bool is_one() const noexcept { return !infinite && n == 1; }
  Multiplicity& operator+=(const Multiplicity& o) {
    infinite = infinite || o.infinite;
    n = infinite ? 0 : n + o.n;
    return *this;
  }
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

/// Z[1/S]; `all_primes` marks Q.
struct Localization {
  std::vector<Int> primes;  // sorted, distinct
  bool all_primes = false;
  friend auto operator<=>(const Localization&, const Localization&) = default;
};

struct MinimaxDescriptor {
  Multiplicity free_rank;
  std::map<std::pair<Int, int>, Multiplicity> torsion;  // (p, k) -> copies of Z/p^k
  std::map<Int, Multiplicity> prufer;
  std::map<Localization, Multiplicity> localized;

  bool is_zero() const;
  /// Canonical text, parseable by parse_descriptor.
  std::string text() const;
  friend bool operator==(const MinimaxDescriptor&, const MinimaxDescriptor&) = default;
};

/// Terms joined by '+': "Z", "Z/12", "Prufer(3)" or "Prüfer(3)", "Z[1/2]",
/// "Z[1/{2,5}]", "Q", "0", each optionally prefixed "k*" or "inf*" or
/// suffixed "^k" / "^inf".
MinimaxDescriptor parse_descriptor(const std::string& text);

bool is_minimax(const MinimaxDescriptor& d);
/// Throws NotMinimax.
MinimaxDescriptor artinian_quotient(const MinimaxDescriptor& d);
/// Finite counts overflowing 64 bits throw TooLarge.
SymbolicCardinal count_submodules(const MinimaxDescriptor& d);
bool is_meager_z(const MinimaxDescriptor& d);

/// Number of subgroups of the abelian p-group of type `lambda`.
std::uint64_t count_p_subgroups(Int p, std::vector<int> lambda);

struct OrdinalLength {
  enum class Kind { Finite, Omega, OmegaPlusOne, AboveOmegaPlusOne };
  Kind kind = Kind::Finite;
  std::uint64_t n = 0;
  std::string to_string() const;
  friend bool operator==(const OrdinalLength&, const OrdinalLength&) = default;
};
/// Throws NotFinitelyGenerated unless d is a finite sum of Z and Z/p^k.
OrdinalLength ordinal_length_class(const MinimaxDescriptor& d);

enum class UniserialCase { FiniteChain, PruferCase, DVRCase };
const char* to_string(UniserialCase c) noexcept;
struct UniserialZ {
  bool uniserial = false;
  std::optional<UniserialCase> tag;
};
/// Over Z itself DVRCase never occurs: Z has the incomparable subgroups 2Z, 3Z.
UniserialZ uniserial_z(const MinimaxDescriptor& d);

struct CrosscheckReport {
  enum class Claim { None, Chain, Exponential, Exact };
  Int p = 0;
  int level = 0;
  std::string model_text;
  std::uint64_t count = 0;
  bool uniserial = false;
  bool meager = false;
  SymbolicCardinal verdict = SymbolicCardinal::finite(0);
  Claim claim = Claim::None;
  std::uint64_t expected = 0;  // exact count, or the lower bound 2^k
  bool consistent = true;
};
const char* to_string(CrosscheckReport::Claim c) noexcept;

/// Finite module approximating d at level k: over Z/p^k, Z, Z[1/S] and
/// Prufer(p) become Z/p^k, Z/p^j becomes Z/p^min(j,k) and `inf` copies become
/// k copies. When d contains Q the model is instead the sum of Z/q over the
/// first k primes q. Throws InvalidArgument when d has no p-part.
FiniteModule truncation_model(const MinimaxDescriptor& d, Int p, int k);

/// Compares the lattice size of truncation_model(d, p, k) with
/// count_submodules(d).
CrosscheckReport truncation_crosscheck(const MinimaxDescriptor& d, Int p, int k,
                                       std::size_t limit = kDefaultNodeLimit,
                                       std::size_t element_budget = kDefaultElementBudget);

}  // namespace modlat
