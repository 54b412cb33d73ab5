#pragma once

// Brute-force reference implementations over explicit element sets. Nothing
// here shares code with the Howell/Smith machinery; groups are plain lists of
// cyclic orders and subgroups are bitsets over the mixed-radix element index.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace modlat::oracle {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;
using Bits = std::vector<std::uint64_t>;

class Group {
 public:
  /// Z/orders[0] x Z/orders[1] x ...; throws std::length_error past max_elements.
  Group(std::vector<Int> orders, std::size_t max_elements = std::size_t{1} << 16);

  std::size_t size() const noexcept { return size_; }
  const std::vector<Int>& orders() const noexcept { return orders_; }

  std::size_t index(const Vec& x) const;
  Vec element(std::size_t i) const;
  std::size_t add(std::size_t a, std::size_t b) const;
  /// Index of x*A (row convention).
  std::size_t apply(std::size_t a, const Mat& A) const;

  Bits empty() const;
  Bits generated(const Mat& gens) const;

  /// Every subgroup, by repeated adjunction of single elements.
  std::vector<Bits> all_subgroups() const;
  /// Subgroups closed under every action matrix.
  std::vector<Bits> invariant_subgroups(const std::vector<Mat>& actions) const;

 private:
  std::vector<Int> orders_;
  std::size_t size_ = 1;
};

bool test(const Bits& b, std::size_t i);
void set(Bits& b, std::size_t i);
std::size_t popcount(const Bits& b);
bool subset(const Bits& a, const Bits& b);

/// Number of maps f: M -> N with f(x*A^M_i) = f(x)*A^N_i for all i, found by
/// trying every assignment of generator images.
std::size_t count_homs(const Group& m, const std::vector<Mat>& m_actions, const Group& n,
                       const std::vector<Mat>& n_actions);

/// Monomials of total degree < d in `nvars` variables divisible by none of
/// the exponent vectors in `relations`, by listing every exponent vector.
std::size_t count_monomials(std::size_t nvars, int d, const std::vector<std::vector<int>>& relations = {});

}  // namespace modlat::oracle
