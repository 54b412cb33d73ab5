#pragma once

// Finite commutative local algebras over Z/p^E with residue field F_p.
//
// An algebra is free over Z/p^E on a basis b_0 = 1, b_1, ..., b_{m-1} and is
// described by structure constants b_i * b_j = sum_k c_ijk b_k. The maximal
// ideal is spanned by p*b_0 and b_1..b_{m-1}. With E = 1 this is an F_p-algebra
// (truncated polynomial rings); with m = 1 it is Z/p^E.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modlat/zp.hpp"

namespace modlat {

using zp::Int;
using zp::Mat;
using zp::Vec;

inline constexpr std::size_t kDefaultMaxDim = 4096;
inline constexpr std::size_t kDefaultElementBudget = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultNodeLimit = 200000;

class LocalAlgebra {
 public:
  struct MonomialData {
    std::vector<std::string> variables;
    std::vector<std::vector<int>> exponents;  // one per basis element
  };
  /// table[i][j] is the coordinate vector of b_i * b_j. Validates the ring
  /// axioms exhaustively and the nilpotency of the maximal ideal.
  static LocalAlgebra from_table(Int p, int exponent, std::vector<std::vector<Vec>> table,
                                 std::vector<std::string> labels = {},
                                 std::optional<MonomialData> monomials = std::nullopt);

  Int p() const noexcept;
  /// Coefficients live in Z/p^exponent.
  int exponent() const noexcept;
  Int modulus() const noexcept;
  std::size_t dim() const noexcept;
  /// Composition length of the regular module.
  int length() const noexcept;
  const std::vector<std::string>& labels() const noexcept;

  const zp::Layout& layout() const noexcept;
  /// Matrix of x -> b_i * x, one per basis element.
  const std::vector<Mat>& multiplication_matrices() const noexcept;
  Mat multiplication_matrix(const Vec& a) const;

  Vec one() const;
  Vec basis_vector(std::size_t i) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  const Vec& basis_product(std::size_t i, std::size_t j) const;

  /// Least d with M^d = 0.
  int nilpotency() const noexcept;

  /// Exponent vectors of the basis monomials when built from a polynomial ring.
  const std::vector<std::vector<int>>& monomials() const noexcept;
  const std::vector<std::string>& variables() const noexcept;

  std::string describe() const;

  /// Same coefficient ring and structure constants.
  friend bool operator==(const LocalAlgebra& a, const LocalAlgebra& b) noexcept;

 private:
  struct Impl;
  explicit LocalAlgebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Ideal of a local algebra, canonical via the Howell form of its elements.
class Ideal {
 public:
  Ideal(LocalAlgebra ring, zp::Span span) : ring_(std::move(ring)), span_(std::move(span)) {}

  const LocalAlgebra& ring() const noexcept { return ring_; }
  const zp::Span& span() const noexcept { return span_; }
  int length() const noexcept { return span_.length(); }
  bool is_zero() const noexcept { return span_.length() == 0; }
  Mat generators() const;
  bool contains(const Vec& x) const;
  bool includes(const Ideal& other) const;

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.span_ == b.span_; }
  friend std::strong_ordering operator<=>(const Ideal& a, const Ideal& b) {
    return a.span_ <=> b.span_;
  }

 private:
  LocalAlgebra ring_;
  zp::Span span_;
};

/// F_p-algebra from structure constants: table[i][j] = b_i * b_j.
LocalAlgebra make_local_algebra(Int p, std::vector<std::vector<Vec>> table,
                                std::vector<std::string> labels = {});

/// F_p[vars] / (relations + all monomials of degree >= cap), basis in graded
/// lex order. Relations are monomial strings such as "T^2*Y".
LocalAlgebra truncated_polynomial_ring(Int p, const std::vector<std::string>& vars, int cap,
                                       const std::vector<std::string>& relations = {},
                                       std::size_t max_dim = kDefaultMaxDim);

/// Z/p^k.
LocalAlgebra cyclic_ring(Int p, int k);

/// Exponent vector of a monomial string over `vars` ("1", "x", "x^2*y").
std::vector<int> parse_monomial(const std::vector<std::string>& vars, const std::string& text);
std::string monomial_label(const std::vector<std::string>& vars, const std::vector<int>& exps);

Ideal ideal_span(const LocalAlgebra& ring, const Mat& gens);
Ideal zero_ideal(const LocalAlgebra& ring);
Ideal unit_ideal(const LocalAlgebra& ring);
Ideal maximal_ideal(const LocalAlgebra& ring);

enum class IdealOp { Sum, Product, Intersection };
Ideal ideal_combine(IdealOp op, const Ideal& a, const Ideal& b);
/// I^n, with I^0 = R.
Ideal ideal_power(const Ideal& a, int n);

/// dim_{F_p} M^n / M^{n+1}.
int graded_piece_dim(const LocalAlgebra& ring, int n);

/// All ideals, sorted by length then canonical rows.
std::vector<Ideal> enumerate_ideals(const LocalAlgebra& ring, std::size_t limit = kDefaultNodeLimit,
                                    std::size_t element_budget = kDefaultElementBudget);

}  // namespace modlat
