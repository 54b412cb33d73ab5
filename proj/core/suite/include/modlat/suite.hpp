#pragma once

// Acceptance battery and JSON check corpus. Every check returns a
// CheckResult; none of them throw for a failed property.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "modlat/module.hpp"

namespace modlat::suite {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 20240917;
  std::size_t random_modules = 240;
  bool parallel = true;
};

/// Wall-clock limits, in seconds.
inline constexpr double kMatlisSuiteLimit = 120;
inline constexpr double kIdealTreeLimit = 300;
inline constexpr double kOracleSuiteLimit = 600;

/// Local algebras of the shipped corpus: F_p[t]/t^d (p = 2, 3; d <= 5),
/// F_2[x,y]/M^d (d <= 3) and Z/p^k (p = 2, 3; k <= 4).
std::vector<LocalAlgebra> corpus_algebras();
/// Modules of length <= max_length over R: cyclic R/I, sums of two of them,
/// the injective hull, and the Matlis duals of all of these.
std::vector<FiniteModule> corpus_modules(const LocalAlgebra& ring, int max_length = 4);

/// Rings used for random modules: Z/12, Z/36 and F_2[t]/t^3 x F_3[s]/s^2
/// when `decomposition_rings` is set, plus several local rings otherwise.
std::vector<FiniteRing> random_rings(bool decomposition_rings);
/// Sum of one to three cyclic modules R/I, then optionally a random quotient
/// or a random cyclic submodule.
FiniteModule random_module(std::mt19937_64& rng, const std::vector<FiniteRing>& rings, int max_length = 6);

CheckResult check_matlis_involution(const SuiteOptions& opt);
CheckResult check_primary_decomposition(const SuiteOptions& opt);
CheckResult check_meager_fast_path(const SuiteOptions& opt);
CheckResult check_ideal_tree_dichotomy(const SuiteOptions& opt);
CheckResult check_hilbert_samuel(const SuiteOptions& opt);
CheckResult check_pair_growth(const SuiteOptions& opt);
CheckResult check_countability(const SuiteOptions& opt);
CheckResult check_continuity_audit(const SuiteOptions& opt);
CheckResult check_square_embedding(const SuiteOptions& opt);
CheckResult check_oracle_equivalence(const SuiteOptions& opt);

/// All ten checks, in order, optionally run concurrently.
std::vector<CheckResult> run_acceptance(const SuiteOptions& opt);

/// Runs every *.json check file in `dir` in file-name order.
std::vector<CheckResult> run_corpus(const std::filesystem::path& dir);

}  // namespace modlat::suite
