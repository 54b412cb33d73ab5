#include <gtest/gtest.h>

#include <random>
#include <set>

#include "modlat/error.hpp"
#include "modlat/module.hpp"
#include "modlat/oracle.hpp"

using namespace modlat;

namespace {

std::vector<oracle::Int> orders_of(const zp::Layout& L) {
  std::vector<oracle::Int> out;
  for (std::size_t j = 0; j < L.size(); ++j) out.push_back(L.order_of(j));
  return out;
}

std::size_t oracle_submodule_count(const FiniteModule& m) {
  return oracle::Group(orders_of(m.layout())).invariant_subgroups(m.actions()).size();
}

FiniteModule quotient_by(const FiniteRing& R, const Mat& gens) {
  return cyclic_quotient(product_ideal_span(R, gens));
}

// Z/n as a module over Z/m (n | m), via Z/m / (n).
FiniteModule zmod_module(Int m, Int n) {
  FiniteRing R = zmod_ring(m);
  Vec g(R.dim(), 0);
  for (std::size_t f = 0; f < R.factor_count(); ++f) g[R.offset(f)] = n % R.factor(f).modulus();
  return quotient_by(R, {g});
}

std::size_t hom_count_oracle(const FiniteModule& m, const FiniteModule& n) {
  return oracle::count_homs(oracle::Group(orders_of(m.layout())), m.actions(),
                            oracle::Group(orders_of(n.layout())), n.actions());
}

std::size_t power_of(const FiniteModule& m, int len) {
  // every hom space here is a p-group for a single prime p
  std::size_t out = 1;
  const Int p = m.ring().factor(0).p();
  for (int i = 0; i < len; ++i) out *= static_cast<std::size_t>(p);
  return out;
}

}  // namespace

TEST(Module, RegularAndTrivial) {
  auto R = truncated_polynomial_ring(2, {"t"}, 3);
  auto M = regular_module(R);
  EXPECT_EQ(M.length(), 3);
  auto F2 = make_local_algebra(2, {{{1}}});
  auto V = make_module(F2, zp::Layout({{2, 1}, {2, 1}}), {{{1, 0}, {0, 1}}});
  EXPECT_EQ(V.length(), 2);
  EXPECT_EQ(enumerate_submodules(V).size(), 5u);
}

TEST(Module, Z12OnZ6) {
  auto M = zmod_module(12, 6);
  EXPECT_EQ(M.length(), 2);
  EXPECT_EQ(M.layout().cardinality(100), 6u);
  EXPECT_EQ(associated_primes(M), (std::vector<std::size_t>{0, 1}));
}

TEST(Module, RejectsBadActions) {
  auto R = FiniteRing(truncated_polynomial_ring(2, {"t"}, 3));
  // t acting as the identity breaks t*t = t^2 with t^2 acting as 0
  std::vector<Mat> acts = {{{1}}, {{1}}, {{0}}};
  EXPECT_THROW(make_module(R, zp::Layout({{2, 1}}), acts), Error);
  try {
    make_module(R, zp::Layout({{2, 1}}), acts);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ActionNotRepresentation);
  }
  EXPECT_THROW(make_module(R, zp::Layout({{2, 1}}), {{{0}}, {{0}}, {{0}}}), Error);
}

TEST(Module, SpanSubmodule) {
  auto R = truncated_polynomial_ring(2, {"t"}, 3);
  auto M = regular_module(R);
  auto N = span_submodule(M, {{0, 1, 0}});
  EXPECT_EQ(N.length(), 2);
  EXPECT_TRUE(N.contains({0, 1, 1}));
  EXPECT_TRUE(span_submodule(M, {{0, 0, 0}}).is_zero());
  auto Z4 = FiniteRing(cyclic_ring(2, 2));
  auto M2 = direct_sum({regular_module(Z4), regular_module(Z4)});
  EXPECT_EQ(span_submodule(M2, {{1, 1}}).length(), 2);
}

TEST(Module, Quotients) {
  auto Z4 = FiniteRing(cyclic_ring(2, 2));
  auto M = regular_module(Z4);
  EXPECT_EQ(quotient(M, zero_submodule(M)).module.length(), 2);
  EXPECT_EQ(quotient(M, full_submodule(M)).module.length(), 0);
  auto Q = quotient(M, span_submodule(M, {{2}}));
  EXPECT_EQ(Q.module.layout().order_of(0), 2);
  auto other = regular_module(Z4);
  EXPECT_THROW(quotient(M, zero_submodule(other)), Error);
  EXPECT_THROW(checked_submodule(regular_module(truncated_polynomial_ring(2, {"t"}, 3)),
                                 zp::span(zp::Layout({{2, 1}, {2, 1}, {2, 1}}), {{0, 1, 0}})),
               Error);
}

TEST(Hom, SpecExamples) {
  auto Z4 = FiniteRing(cyclic_ring(2, 2));
  EXPECT_EQ(hom_length(zmod_module(4, 2), regular_module(Z4)), 1);
  EXPECT_EQ(hom_length(regular_module(Z4), zero_module(Z4)), 0);
  auto R = FiniteRing(truncated_polynomial_ring(2, {"x", "y"}, 3));
  auto M = quotient_by(R, {{0, 1, 0, 0, 0, 0}});
  EXPECT_EQ(hom_length(regular_module(R), M), M.length());
}

TEST(Hom, LengthMatchesBruteForceCount) {
  std::vector<std::pair<FiniteModule, FiniteModule>> cases;
  auto Z8 = FiniteRing(cyclic_ring(2, 3));
  auto T = FiniteRing(truncated_polynomial_ring(2, {"t"}, 3));
  auto XY = FiniteRing(truncated_polynomial_ring(2, {"x", "y"}, 2));
  cases.emplace_back(zmod_module(8, 4), zmod_module(8, 2));
  cases.emplace_back(regular_module(Z8), zmod_module(8, 4));
  cases.emplace_back(direct_sum({zmod_module(8, 2), zmod_module(8, 4)}), regular_module(Z8));
  cases.emplace_back(regular_module(T), quotient_by(T, {{0, 0, 1}}));
  cases.emplace_back(quotient_by(T, {{0, 1, 0}}), regular_module(T));
  cases.emplace_back(regular_module(XY), regular_module(XY));
  cases.emplace_back(quotient_by(XY, {{0, 1, 0}}), regular_module(XY));
  for (const auto& [m, n] : cases) {
    const int len = hom_length(m, n);
    EXPECT_EQ(power_of(m, len), hom_count_oracle(m, n)) << m.describe() << " -> " << n.describe();
    auto H = hom_module(m, n);
    EXPECT_EQ(H.module.length(), len);
    for (const auto& F : H.maps) {
      auto chk = check_module_map(m, n, F);
      EXPECT_TRUE(chk.well_defined && chk.linear);
    }
  }
}

TEST(Hom, MixedPrimes) {
  auto M = zmod_module(12, 6);
  auto R = regular_module(zmod_ring(12));
  EXPECT_EQ(hom_length(M, R), 2);
  EXPECT_EQ(hom_count_oracle(M, R), 6u);
}

TEST(Socle, Examples) {
  auto XY = FiniteRing(truncated_polynomial_ring(2, {"x", "y"}, 2));
  EXPECT_EQ(socle(regular_module(XY)).length(), 2);
  auto T = truncated_polynomial_ring(2, {"t"}, 4);
  auto s = socle(regular_module(T));
  EXPECT_EQ(s.length(), 1);
  EXPECT_TRUE(s.contains({0, 0, 0, 1}));
  auto F2 = make_local_algebra(2, {{{1}}});
  auto V = direct_sum({regular_module(F2), regular_module(F2)});
  EXPECT_EQ(socle(V).length(), 2);
}

TEST(Length, Examples) {
  EXPECT_EQ(length(regular_module(truncated_polynomial_ring(2, {"x", "y"}, 3))), 6);
  EXPECT_EQ(length(zero_module(cyclic_ring(2, 1))), 0);
  EXPECT_EQ(length(regular_module(cyclic_ring(2, 3))), 3);
}

TEST(Annihilator, Examples) {
  auto T = truncated_polynomial_ring(2, {"t"}, 4);
  FiniteRing R(T);
  EXPECT_TRUE(annihilator(regular_module(R)).part(0).is_zero());
  auto I = product_ideal_span(R, {{0, 0, 1, 0}});
  EXPECT_EQ(annihilator(cyclic_quotient(I)), I);
  auto soc = as_module(socle(regular_module(R))).module;
  EXPECT_EQ(annihilator(soc).part(0), maximal_ideal(T));
  auto Z12 = zmod_ring(12);
  auto ann = annihilator(zmod_module(12, 6));
  EXPECT_EQ(ann.part(0).length(), 1);  // 2Z/4
  EXPECT_TRUE(ann.part(1).is_zero());
}

TEST(Asso, Examples) {
  EXPECT_TRUE(associated_primes(zero_module(zmod_ring(12))).empty());
  EXPECT_EQ(associated_primes(regular_module(truncated_polynomial_ring(2, {"x", "y"}, 2))).size(), 1u);
}

TEST(Primary, Examples) {
  auto d = primary_components(regular_module(zmod_ring(12)));
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_EQ(d.components[0].torsion_part.length(), 2);
  EXPECT_EQ(d.components[1].torsion_part.length(), 1);
  auto M = direct_sum({zmod_module(12, 6), zmod_module(12, 4)});
  auto e = primary_components(M);
  ASSERT_EQ(e.components.size(), 2u);
  EXPECT_EQ(e.components[0].torsion_part.length(), 3);
  EXPECT_EQ(e.components[1].torsion_part.length(), 1);
  auto L = primary_components(regular_module(truncated_polynomial_ring(2, {"t"}, 3)));
  ASSERT_EQ(L.components.size(), 1u);
  EXPECT_EQ(L.components[0].torsion_part.length(), 3);
}

TEST(Primary, SubmodulesSplitAlongComponents) {
  auto M = direct_sum({zmod_module(12, 6), zmod_module(12, 12)});
  auto d = primary_components(M);
  auto lat = enumerate_submodules(M);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    auto N = lat.node(i);
    Submodule total = zero_submodule(M);
    for (const auto& c : d.components) total = submodule_sum(total, submodule_intersection(N, c.torsion_part));
    EXPECT_EQ(total, N);
  }
}

TEST(Lattice, Examples) {
  EXPECT_EQ(enumerate_submodules(regular_module(cyclic_ring(2, 3))).size(), 4u);
  auto Z4 = FiniteRing(cyclic_ring(2, 2));
  auto M = direct_sum({regular_module(Z4), regular_module(Z4)});
  auto lat = enumerate_submodules(M);
  EXPECT_EQ(lat.size(), 15u);
  EXPECT_EQ(lat.counts_by_length(), (std::vector<std::size_t>{1, 3, 7, 3, 1}));
  EXPECT_THROW(enumerate_submodules(M, 5), Error);
}

TEST(Lattice, ClosedUnderMeetAndJoin) {
  auto R = FiniteRing(truncated_polynomial_ring(2, {"x", "y"}, 2));
  auto M = direct_sum({regular_module(R), quotient_by(R, {{0, 1, 0}})});
  auto lat = enumerate_submodules(M);
  ASSERT_TRUE(lat.index_of(zero_submodule(M).span()));
  ASSERT_TRUE(lat.index_of(full_submodule(M).span()));
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t j = i; j < lat.size(); ++j) {
      EXPECT_TRUE(lat.index_of(submodule_sum(lat.node(i), lat.node(j)).span()));
      EXPECT_TRUE(lat.index_of(submodule_intersection(lat.node(i), lat.node(j)).span()));
    }
}

TEST(Lattice, MatchesSubspaceFilter) {
  auto T = FiniteRing(truncated_polynomial_ring(2, {"t"}, 3));
  auto XY = FiniteRing(truncated_polynomial_ring(2, {"x", "y"}, 2));
  auto F3 = FiniteRing(truncated_polynomial_ring(3, {"t"}, 2));
  std::vector<FiniteModule> mods = {
      direct_sum({regular_module(T), regular_module(T)}),
      direct_sum({regular_module(XY), quotient_by(XY, {{0, 1, 0}, {0, 0, 1}})}),
      direct_sum({regular_module(F3), regular_module(F3)}),
      direct_sum({zmod_module(12, 6), zmod_module(12, 4)}),
      direct_sum({regular_module(cyclic_ring(2, 2)), regular_module(cyclic_ring(2, 2)), zmod_module(4, 2)})};
  for (const auto& m : mods) EXPECT_EQ(enumerate_submodules(m).size(), oracle_submodule_count(m)) << m.describe();
}

TEST(Lattice, RandomQuotientsMatchOracle) {
  std::mt19937_64 rng(2024);
  auto T = FiniteRing(truncated_polynomial_ring(2, {"t"}, 3));
  auto M = direct_sum({regular_module(T), regular_module(T)});
  for (int trial = 0; trial < 20; ++trial) {
    Vec g(6);
    for (auto& a : g) a = static_cast<Int>(rng() % 2);
    auto Q = quotient(M, span_submodule(M, {g})).module;
    EXPECT_EQ(enumerate_submodules(Q).size(), oracle_submodule_count(Q));
  }
}
