#pragma once

// Exact linear algebra over Z/p^e and finite abelian groups.
//
// A finite abelian group is described by a Layout: an ordered list of cyclic
// generators g_j of prime-power order p_j^{e_j}. Elements are integer vectors
// of "natural" coordinates x_j (taken mod p_j^{e_j}). Generators sharing a prime
// form a block; inside a block of top exponent E the subgroup generated by the
// g_j embeds into (Z/p^E)^k through x_j -> p^{E-e_j} x_j, and every subgroup is
// stored by the Howell form of its embedded generators. The Howell form over
// the local ring Z/p^E is canonical, so two subgroups are equal iff their Span
// values compare equal.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace modlat::zp {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;

Int power(Int base, int exp);
Int mod(Int a, Int q);
Int mul_mod(Int a, Int b, Int q);
/// Valuation of `a` in Z/p^e; returns e for a == 0 mod p^e.
int valuation(Int a, Int p, int e);
Int unit_inverse(Int u, Int q);
bool is_prime(Int n);

/// Canonical Howell form of the row span of `rows` over Z/p^e. Rows are in
/// echelon order, each pivot is p^v, entries above a pivot p^v lie in [0, p^v).
Mat howell_form(Mat rows, Int p, int e);

/// Smith reduction with tracked column operations: there is an invertible U
/// with U * rows * V = diag(p^valuations[t]) (valuation e marks a zero pivot).
struct SmithForm {
  std::vector<int> valuations;  // one per column
  Mat V;
  Mat V_inv;
};
SmithForm smith_form(Mat rows, std::size_t ncols, Int p, int e);

struct Cyclic {
  Int p = 2;
  int e = 1;
  friend auto operator<=>(const Cyclic&, const Cyclic&) = default;
};

class Layout {
 public:
  struct Block {
    Int p = 2;
    int top = 1;  // largest exponent in the block
    std::vector<std::size_t> index;
  };

  Layout() = default;
  explicit Layout(std::vector<Cyclic> gens);

  std::size_t size() const noexcept { return gens_.size(); }
  const Cyclic& operator[](std::size_t j) const { return gens_[j]; }
  const std::vector<Cyclic>& gens() const noexcept { return gens_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  Int order_of(std::size_t j) const { return power(gens_[j].p, gens_[j].e); }

  /// Composition length: sum of the exponents.
  int length() const noexcept;
  /// Number of elements, or 0 when it exceeds `cap`.
  std::size_t cardinality(std::size_t cap) const;

  Vec reduce(Vec x) const;
  bool is_zero(const Vec& x) const;
  Vec add(const Vec& x, const Vec& y) const;
  Vec scale(const Vec& x, Int c) const;
  /// Row convention: the image of x under the endomorphism with matrix A is x*A.
  Vec apply(const Vec& x, const Mat& A) const;
  /// x * P for a rectangular P whose columns index this layout's generators.
  Vec image(const Vec& x, const Mat& P) const;

  Vec embed(std::size_t block, const Vec& x, int top) const;
  Vec restore(std::size_t block, const Vec& y, int top) const;

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<Cyclic> gens_;
  std::vector<Block> blocks_;
};

/// Canonical subgroup: per-block Howell rows plus the composition length.
class Span {
 public:
  Span() = default;

  int length() const noexcept { return length_; }
  const std::vector<Mat>& rows() const noexcept { return rows_; }

  friend bool operator==(const Span&, const Span&) = default;
  friend std::strong_ordering operator<=>(const Span& a, const Span& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.rows_ <=> b.rows_;
  }

 private:
  friend Span make_span(const Layout& layout, std::vector<Mat> howell_rows);
  int length_ = 0;
  std::vector<Mat> rows_;
};

/// Wraps already-canonical per-block Howell rows.
Span make_span(const Layout& layout, std::vector<Mat> howell_rows);

Span span(const Layout& layout, const Mat& gens);
Span zero_span(const Layout& layout);
Span full_span(const Layout& layout);
Span sum(const Layout& layout, const Span& a, const Span& b);
Span intersect(const Layout& layout, const Span& a, const Span& b);
bool contains(const Layout& layout, const Span& s, const Vec& x);
/// inner is a subgroup of outer.
bool includes(const Layout& layout, const Span& outer, const Span& inner);
/// Generators of `s` in natural coordinates.
Mat generators(const Layout& layout, const Span& s);

/// Smallest subgroup containing `s` and stable under every matrix in `actions`.
Span close(const Layout& layout, Span s, const std::vector<Mat>& actions);

/// Kernel of the homomorphism defined on the subgroup generated by `dom_gens`
/// by dom_gens[i] -> images[i] (images in natural coordinates of `target`).
/// The assignment must extend to a homomorphism.
Span kernel(const Layout& domain, const Mat& dom_gens, const Layout& target,
            const Mat& images);

/// Direct-sum decomposition of a subgroup into cyclic pieces.
struct SubgroupBasis {
  Layout layout;   // cyclic orders of the pieces
  Mat elements;    // generator of each piece, ambient natural coordinates
  struct BlockData {
    std::size_t block = 0;
    Mat V;
    std::vector<int> valuations;
    std::vector<std::size_t> out;  // column t -> piece index (or npos)
  };
  std::vector<BlockData> data;
};
SubgroupBasis basis_of(const Layout& layout, const Span& s);
/// Coordinates of x (which must lie in the subgroup) on the basis pieces.
Vec coordinates(const Layout& layout, const SubgroupBasis& basis, const Vec& x);

/// Quotient of the whole group by a subgroup.
struct QuotientData {
  Layout layout;
  Mat projection;  // ambient (n) x quotient (nq): x -> x * projection
  Mat lift;        // quotient (nq) x ambient (n)
};
QuotientData quotient(const Layout& layout, const Span& s);

/// Visits every element of the group in mixed-radix order.
void for_each_element(const Layout& layout, const std::function<void(const Vec&)>& visit);

/// Invariant subgroups under `actions`, canonically sorted, with the Hasse
/// covers (i, j) meaning nodes[i] is covered by nodes[j].
struct LatticeData {
  std::vector<Span> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};
/// Breadth-first joins of cyclic invariant subgroups. Throws BudgetExceeded
/// when more than `limit` nodes appear or the group has more than
/// `element_budget` elements.
LatticeData enumerate_invariant(const Layout& layout, const std::vector<Mat>& actions,
                                std::size_t limit, std::size_t element_budget);

}  // namespace modlat::zp
