#include <gtest/gtest.h>

#include "modlat/classify.hpp"
#include "modlat/error.hpp"

using namespace modlat;

namespace {

FiniteModule zmod_module(Int m, Int n) {
  FiniteRing R = zmod_ring(m);
  Vec g(R.dim(), 0);
  for (std::size_t f = 0; f < R.factor_count(); ++f) g[R.offset(f)] = n % R.factor(f).modulus();
  return cyclic_quotient(product_ideal_span(R, {g}));
}

FiniteModule f2_squared() {
  FiniteRing F2(cyclic_ring(2, 1));
  return direct_sum({regular_module(F2), regular_module(F2)});
}

}  // namespace

TEST(Uniserial, Examples) {
  auto z8 = is_uniserial(regular_module(cyclic_ring(2, 3)));
  EXPECT_TRUE(z8.uniserial);
  EXPECT_EQ(z8.chain.size(), 4u);
  EXPECT_FALSE(is_uniserial(f2_squared()).uniserial);
  EXPECT_FALSE(is_uniserial(regular_module(truncated_polynomial_ring(2, {"x", "y"}, 2))).uniserial);
}

TEST(Uniserial, LayersAgreeWithLattice) {
  std::vector<FiniteModule> mods = {regular_module(cyclic_ring(2, 3)), f2_squared(),
                                    regular_module(truncated_polynomial_ring(2, {"x", "y"}, 2)),
                                    regular_module(truncated_polynomial_ring(3, {"t"}, 4)),
                                    zmod_module(12, 6), zmod_module(12, 4), regular_module(zmod_ring(8))};
  for (const auto& m : mods) EXPECT_EQ(uniserial_by_layers(m), is_uniserial(m).uniserial) << m.describe();
}

TEST(Meager, Examples) {
  auto sq = is_meager(f2_squared());
  EXPECT_FALSE(sq.meager);
  ASSERT_TRUE(sq.witness);
  EXPECT_TRUE(sq.witness->lower.is_zero());
  EXPECT_EQ(sq.witness->upper.length(), 2);
  EXPECT_TRUE(is_meager(regular_module(cyclic_ring(2, 2))).meager);
  auto z6 = regular_module(zmod_ring(6));
  EXPECT_TRUE(is_meager(z6).meager);
  EXPECT_FALSE(is_uniserial(z6).uniserial);
}

TEST(Meager, FastPathExamples) {
  EXPECT_TRUE(meager_fast_path(regular_module(zmod_ring(12))));
  auto m = direct_sum({zmod_module(4, 2), regular_module(zmod_ring(4))});
  EXPECT_FALSE(meager_fast_path(m));
  EXPECT_FALSE(is_meager(m).meager);
  EXPECT_TRUE(meager_fast_path(zero_module(zmod_ring(4))));
}

TEST(Meager, WitnessQuotientIsSquareOfSimple) {
  auto R = FiniteRing(truncated_polynomial_ring(2, {"x", "y"}, 3));
  auto m = regular_module(R);
  auto res = is_meager(m);
  ASSERT_FALSE(res.meager);
  const auto& w = *res.witness;
  EXPECT_TRUE(w.upper.includes(w.lower));
  EXPECT_EQ(w.upper.length() - w.lower.length(), 2);
  // J * P lies in N, so P/N is semisimple of length 2
  EXPECT_TRUE(w.lower.includes(ideal_times(radical(R), w.upper)));
}

TEST(Atoms, Examples) {
  EXPECT_EQ(discriminating_atoms(regular_module(zmod_ring(6))).size(), 2u);
  auto z8 = discriminating_atoms(regular_module(zmod_ring(8)));
  ASSERT_EQ(z8.size(), 1u);
  EXPECT_TRUE(z8[0].contains({4}));
  EXPECT_EQ(discriminating_atoms(f2_squared()).size(), 3u);
}

TEST(Atoms, CountIsProjectiveLineForTwoDimensionalSocle) {
  for (Int p : {2, 3, 5}) {
    auto R = FiniteRing(truncated_polynomial_ring(p, {"x", "y"}, 2));
    auto m = regular_module(R);
    ASSERT_EQ(socle(m).length(), 2);
    EXPECT_EQ(discriminating_atoms(m).size(), static_cast<std::size_t>(p + 1));
  }
}

TEST(Atoms, EveryNonzeroSubmoduleContainsAnAtom) {
  auto m = direct_sum({regular_module(zmod_ring(12)), zmod_module(12, 2)});
  auto lat = enumerate_submodules(m);
  auto atoms = discriminating_atoms(m);
  for (std::size_t i = 1; i < lat.size(); ++i) {
    auto n = lat.node(i);
    EXPECT_TRUE(std::any_of(atoms.begin(), atoms.end(), [&](const Submodule& a) { return n.includes(a); }));
  }
}

TEST(SinglePrime, Examples) {
  EXPECT_EQ(classify_single_prime(regular_module(cyclic_ring(2, 2))), SinglePrimeClass::FiniteLengthChain);
  EXPECT_EQ(classify_single_prime(f2_squared()), SinglePrimeClass::NotMeager);
  EXPECT_EQ(classify_single_prime(regular_module(truncated_polynomial_ring(2, {"t"}, 3))),
            SinglePrimeClass::FiniteLengthChain);
  try {
    classify_single_prime(regular_module(zmod_ring(6)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultiplePrimes);
  }
}

TEST(Report, FlagsAreConsistent) {
  auto r = classify(regular_module(cyclic_ring(2, 2)));
  EXPECT_TRUE(r.uniserial);
  EXPECT_TRUE(r.meager);
  EXPECT_TRUE(r.single_associated_prime);
  EXPECT_TRUE(r.fast_path_agrees);
  EXPECT_FALSE(r.meager_witness);
  auto s = classify(f2_squared());
  EXPECT_FALSE(s.meager);
  EXPECT_TRUE(s.meager_witness.has_value());
  EXPECT_TRUE(s.fast_path_agrees);
}
