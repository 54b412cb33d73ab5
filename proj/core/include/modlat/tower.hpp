#pragma once

// Truncation towers (R / M^d)_d of a complete local ring: either a power
// series ring F_p[[vars]] modulo monomial relations, or the p-adic integers.

#include <map>
#include <string>
#include <vector>

#include "modlat/cardinal.hpp"
#include "modlat/module.hpp"

namespace modlat {

struct TowerSpec {
  enum class Kind { PowerSeries, PAdic };
  Kind kind = Kind::PowerSeries;
  Int p = 2;
  std::vector<std::string> vars;
  std::vector<std::string> relations;

  /// Canonical text form, e.g. "F_2[[X,Y,T]]/(T^3,T^2*Y,T*Y^2)" or "Z_3".
  std::string text() const;
};

/// Parses the text grammar documented in docs/tower_spec.md.
TowerSpec parse_tower_spec(const std::string& text);

class Tower {
 public:
  explicit Tower(TowerSpec spec, std::size_t max_dim = kDefaultMaxDim);

  const TowerSpec& spec() const noexcept { return spec_; }
  /// R / M^d, d >= 1.
  LocalAlgebra level(int d) const;
  /// Matrix of level(d+1) -> level(d) (rows indexed by level(d+1)'s basis).
  Mat projection(int d) const;
  /// A set-theoretic section level(d) -> level(d+1).
  Vec lift(int d, const Vec& x) const;
  /// Verifies the tower axioms up to level d; throws InconsistentLevels.
  void check_levels(int d) const;

 private:
  TowerSpec spec_;
  std::size_t max_dim_;
};

/// Builds the tower and spot-checks its first `check_depth` levels.
Tower make_tower(const TowerSpec& spec, int check_depth = 3, std::size_t max_dim = kDefaultMaxDim);

struct HilbertSamuel {
  std::vector<int> lengths;  // length of level(d), d = 1..D
  int krull_estimate = 0;
};
/// Least k such that the k-th differences of 0, L(1), ..., L(D) are constant on
/// their last three entries. Throws NotStabilized when no k qualifies.
HilbertSamuel hilbert_samuel_profile(const Tower& tower, int depth);

struct IdealTree {
  int depth = 0;
  /// levels[n-1][i]: the i-th class at level n, as the ideal R x of level(n).
  std::vector<std::vector<Ideal>> levels;
  /// representatives[n-1][i]: an x generating that ideal.
  std::vector<std::vector<Vec>> representatives;
  /// parent[n-1][i]: index of the containing class at level n-1 (level 1: 0).
  std::vector<std::vector<std::size_t>> parent;
  std::vector<std::size_t> level_sizes() const;
  /// children[n-1][i] for n < depth.
  std::vector<std::vector<std::size_t>> child_counts() const;
};
/// Classes x ~_n y iff R x + M^n = R y + M^n, built level by level from lifts
/// of one representative per class.
IdealTree ideal_tree(const Tower& tower, int depth, std::size_t element_budget = kDefaultElementBudget);

/// Level sizes by scanning every x in M at each level (reference version).
std::vector<std::size_t> ideal_tree_level_sizes_brute(const Tower& tower, int depth,
                                                      std::size_t element_budget = kDefaultElementBudget);

enum class BranchingVerdict { Vacuous, EverywhereBranching, Comb, Chain, Mixed };
const char* to_string(BranchingVerdict v) noexcept;

struct BranchingReport {
  BranchingVerdict verdict = BranchingVerdict::Vacuous;
  std::vector<std::vector<std::size_t>> degrees;    // per non-leaf level
  std::vector<std::size_t> branching_per_level;     // nodes with >= 2 children
  std::size_t min_degree = 0;
  std::size_t leaf_count = 0;
  std::map<std::size_t, std::size_t> histogram;     // degree -> node count
};
BranchingReport branching_report(const IdealTree& tree);

/// For d = 1..D: number of distinct submodules R(1, b) of level(d)^2.
std::vector<std::size_t> pair_growth(const Tower& tower, int depth,
                                     std::size_t element_budget = kDefaultElementBudget);

struct ModuleSpec {
  enum class Kind { Regular, Quotient, Square };
  Kind kind = Kind::Regular;
  std::vector<std::string> monomials;  // ideal killed, for Quotient and Square
  std::string text() const;
};
/// "regular", "quotient(m1,...)", "square", "square(m1,...)".
ModuleSpec parse_module_spec(const std::string& text);

enum class CardinalityTag { KrullDimGe2, SquareSubquotient, ChainOnly, FiniteLength };
const char* to_string(CardinalityTag t) noexcept;

struct CardinalityPrediction {
  SymbolicCardinal value = SymbolicCardinal::finite(0);
  CardinalityTag tag = CardinalityTag::FiniteLength;
  int krull_estimate = 0;
};
/// Throws Unsupported for the cases listed in docs/tower_spec.md.
CardinalityPrediction predict_cardinality(const Tower& tower, const ModuleSpec& spec, int depth = 6,
                                          std::size_t element_budget = kDefaultElementBudget);

/// The map (a, b) -> a g_1 + b g_2 from (level(d) / K)^2 into level(d).
struct SquareEmbeddingReport {
  int depth = 0;
  int domain_length = 0;
  int ideal_length = 0;
  bool well_defined = false;
  bool linear = false;
  bool sends_units_to_generators = false;
  bool injective = false;
  bool onto_ideal = false;
  bool ok() const noexcept {
    return well_defined && linear && sends_units_to_generators && injective && onto_ideal;
  }
};
SquareEmbeddingReport square_embedding_check(const Tower& tower, int depth,
                                             const std::vector<std::string>& generators,
                                             const std::vector<std::string>& killed);

}  // namespace modlat
