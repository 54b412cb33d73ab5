#pragma once

// Finite modules over finite products of local algebras.
//
// The ring R = R_0 x ... x R_{k-1} has a global basis listing every factor's
// basis in turn; basis element (f, 0) is the idempotent of factor f. A module
// is a finite abelian group (a zp::Layout, mixed primes allowed) with one
// action matrix per global basis element, row convention x -> x * A.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modlat/ring.hpp"

namespace modlat {

class FiniteRing {
 public:
  FiniteRing() = default;
  explicit FiniteRing(std::vector<LocalAlgebra> factors);
  FiniteRing(LocalAlgebra local) : FiniteRing(std::vector<LocalAlgebra>{std::move(local)}) {}  // NOLINT

  const std::vector<LocalAlgebra>& factors() const noexcept { return factors_; }
  const LocalAlgebra& factor(std::size_t f) const { return factors_[f]; }
  std::size_t factor_count() const noexcept { return factors_.size(); }
  bool is_local() const noexcept { return factors_.size() == 1; }

  /// Number of global basis elements.
  std::size_t dim() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t offset(std::size_t f) const { return offsets_[f]; }
  std::size_t global_index(std::size_t f, std::size_t i) const { return offsets_[f] + i; }
  const zp::Layout& layout() const noexcept { return layout_; }

  /// Embeds a factor element into global coordinates.
  Vec embed(std::size_t f, const Vec& local) const;
  Vec restrict_to(std::size_t f, const Vec& global) const;
  Vec one() const;

  std::string describe() const;

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) noexcept {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<LocalAlgebra> factors_;
  std::vector<std::size_t> offsets_;  // size factors + 1
  zp::Layout layout_;
};

/// Z/n as the product of its local factors Z/p^k (primes ascending).
FiniteRing zmod_ring(Int n);

/// Ideal of a product ring: one ideal per factor.
class ProductIdeal {
 public:
  ProductIdeal(FiniteRing ring, std::vector<Ideal> parts);

  const FiniteRing& ring() const noexcept { return ring_; }
  const std::vector<Ideal>& parts() const noexcept { return parts_; }
  const Ideal& part(std::size_t f) const { return parts_[f]; }
  int length() const noexcept;
  /// Generators in global ring coordinates.
  Mat generators() const;

  friend bool operator==(const ProductIdeal& a, const ProductIdeal& b) { return a.parts_ == b.parts_; }

 private:
  FiniteRing ring_;
  std::vector<Ideal> parts_;
};

ProductIdeal product_unit_ideal(const FiniteRing& ring);
ProductIdeal product_zero_ideal(const FiniteRing& ring);
/// The maximal ideal M_f x prod_{g != f} R_g.
ProductIdeal factor_maximal_ideal(const FiniteRing& ring, std::size_t f);
/// Jacobson radical: every factor's maximal ideal.
ProductIdeal radical(const FiniteRing& ring);
ProductIdeal product_ideal_span(const FiniteRing& ring, const Mat& global_gens);
ProductIdeal product_combine(IdealOp op, const ProductIdeal& a, const ProductIdeal& b);
ProductIdeal product_power(const ProductIdeal& a, int n);

class FiniteModule {
 public:
  /// Validates that the matrices define a module structure; throws
  /// ActionNotRepresentation naming the first violating basis pair.
  FiniteModule(FiniteRing ring, zp::Layout layout, std::vector<Mat> actions);

  const FiniteRing& ring() const noexcept;
  const zp::Layout& layout() const noexcept;
  /// Number of cyclic generators of the underlying group.
  std::size_t dim() const noexcept { return layout().size(); }
  /// Composition length.
  int length() const noexcept { return layout().length(); }
  const std::vector<Mat>& actions() const noexcept;
  /// Matrix of x -> r * x for a global ring element r.
  Mat action_of(const Vec& r) const;
  Vec act(const Vec& r, const Vec& x) const;

  std::string describe() const;

  /// Modules compare by identity.
  friend bool operator==(const FiniteModule& a, const FiniteModule& b) noexcept {
    return a.impl_ == b.impl_;
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Module from explicit data (alias of the validating constructor).
FiniteModule make_module(const FiniteRing& ring, const zp::Layout& layout, std::vector<Mat> actions);
FiniteModule regular_module(const FiniteRing& ring);
FiniteModule zero_module(const FiniteRing& ring);
FiniteModule direct_sum(const std::vector<FiniteModule>& summands);
/// R / I.
FiniteModule cyclic_quotient(const ProductIdeal& ideal);

class Submodule {
 public:
  Submodule(FiniteModule module, zp::Span span) : module_(std::move(module)), span_(std::move(span)) {}

  const FiniteModule& module() const noexcept { return module_; }
  const zp::Span& span() const noexcept { return span_; }
  int length() const noexcept { return span_.length(); }
  bool is_zero() const noexcept { return span_.length() == 0; }
  Mat generators() const;
  bool contains(const Vec& x) const;
  bool includes(const Submodule& other) const;

  friend bool operator==(const Submodule& a, const Submodule& b) { return a.span_ == b.span_; }
  friend std::strong_ordering operator<=>(const Submodule& a, const Submodule& b) {
    return a.span_ <=> b.span_;
  }

 private:
  FiniteModule module_;
  zp::Span span_;
};

Submodule span_submodule(const FiniteModule& m, const Mat& gens);
Submodule zero_submodule(const FiniteModule& m);
Submodule full_submodule(const FiniteModule& m);
Submodule submodule_sum(const Submodule& a, const Submodule& b);
Submodule submodule_intersection(const Submodule& a, const Submodule& b);
/// Wraps a subgroup, checking closure under the action (NotSubmodule).
Submodule checked_submodule(const FiniteModule& m, const zp::Span& s);

struct QuotientModule {
  FiniteModule module;
  Mat projection;  // M-coordinates -> quotient coordinates
  Mat lift;        // quotient generators as elements of M
};
QuotientModule quotient(const FiniteModule& m, const Submodule& n);

/// A submodule regarded as a module in its own right.
struct EmbeddedModule {
  FiniteModule module;
  Mat inclusion;  // row t = t-th generator of the submodule in M
};
EmbeddedModule as_module(const Submodule& n);

/// Hom_R(M, N) as a finite R-module with (r f)(x) = f(r x).
struct HomModule {
  FiniteModule module;
  /// maps[t]: dim(M) x dim(N) matrix of the t-th generator, x -> x * maps[t].
  std::vector<Mat> maps;
  zp::Layout codomain;
  zp::Layout unknowns;
  zp::SubgroupBasis basis;
  std::vector<std::pair<std::size_t, std::size_t>> entries;  // unknown -> (j, l)
  std::vector<Int> entry_scale;
};
HomModule hom_module(const FiniteModule& m, const FiniteModule& n);
/// Coordinates of a homomorphism matrix in a HomModule's generators.
Vec hom_coordinates(const HomModule& hom, const Mat& f);
/// Composition length of Hom_R(M, N).
int hom_length(const FiniteModule& m, const FiniteModule& n);

/// Checks whether W (rows = images of M's generators in N) is an R-linear map.
struct MapCheck {
  bool well_defined = false;
  bool linear = false;
  bool injective = false;
  zp::Span image;
};
MapCheck check_module_map(const FiniteModule& m, const FiniteModule& n, const Mat& w);

/// {x in M : I x = 0}.
Submodule torsion(const FiniteModule& m, const ProductIdeal& ideal);
/// I * N.
Submodule ideal_times(const ProductIdeal& ideal, const Submodule& n);
/// Socle at factor f, or the full socle when f is absent.
Submodule socle(const FiniteModule& m, std::optional<std::size_t> factor = std::nullopt);
int length(const FiniteModule& m);
ProductIdeal annihilator(const FiniteModule& m);
/// Factor indices whose maximal ideal is associated to M.
std::vector<std::size_t> associated_primes(const FiniteModule& m);

struct PrimaryComponent {
  std::size_t factor = 0;
  Submodule torsion_part;  // {x : P^n x = 0}
  Submodule power_part;    // I_P^n M
};
struct PrimaryDecomposition {
  int exponent = 0;  // least n with I^n M = 0, I the product of the associated primes
  std::vector<PrimaryComponent> components;
};
/// Throws DecompositionMismatch if the two descriptions disagree or the
/// components fail to decompose M.
PrimaryDecomposition primary_components(const FiniteModule& m);

class SubmoduleLattice {
 public:
  SubmoduleLattice(FiniteModule module, zp::LatticeData data);

  const FiniteModule& module() const noexcept { return module_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<zp::Span>& spans() const noexcept { return nodes_; }
  Submodule node(std::size_t i) const { return Submodule(module_, nodes_[i]); }
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }
  /// counts[l] = number of submodules of length l.
  std::vector<std::size_t> counts_by_length() const;
  std::optional<std::size_t> index_of(const zp::Span& s) const;

 private:
  FiniteModule module_;
  std::vector<zp::Span> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

SubmoduleLattice enumerate_submodules(const FiniteModule& m, std::size_t limit = kDefaultNodeLimit,
                                      std::size_t element_budget = kDefaultElementBudget);

}  // namespace modlat
