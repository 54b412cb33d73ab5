#include <gtest/gtest.h>

#include <cmath>

#include "modlat/matlis.hpp"
#include "modlat/oracle.hpp"

using namespace modlat;

namespace {

FiniteModule quotient_by(const FiniteRing& R, const Mat& gens) {
  return cyclic_quotient(product_ideal_span(R, gens));
}

std::vector<FiniteModule> sample_modules() {
  FiniteRing Z4(cyclic_ring(2, 2));
  FiniteRing T(truncated_polynomial_ring(2, {"t"}, 4));
  FiniteRing XY(truncated_polynomial_ring(2, {"x", "y"}, 2));
  FiniteRing F3(truncated_polynomial_ring(3, {"t"}, 3));
  return {regular_module(Z4),
          quotient_by(Z4, {{2}}),
          direct_sum({regular_module(Z4), quotient_by(Z4, {{2}})}),
          regular_module(T),
          quotient_by(T, {{0, 0, 1, 0}}),
          direct_sum({quotient_by(T, {{0, 1, 0, 0}}), quotient_by(T, {{0, 0, 1, 0}})}),
          regular_module(XY),
          injective_hull(XY),
          direct_sum({quotient_by(XY, {{0, 1, 0}}), quotient_by(XY, {{0, 0, 1}})}),
          regular_module(F3),
          regular_module(zmod_ring(12))};
}

std::vector<oracle::Int> orders_of(const zp::Layout& L) {
  std::vector<oracle::Int> out;
  for (std::size_t j = 0; j < L.size(); ++j) out.push_back(L.order_of(j));
  return out;
}

}  // namespace

TEST(InjectiveHull, Examples) {
  auto F2 = FiniteRing(cyclic_ring(2, 1));
  EXPECT_EQ(injective_hull(F2).length(), 1);
  auto Z4 = FiniteRing(cyclic_ring(2, 2));
  auto E = injective_hull(Z4);
  EXPECT_EQ(E.length(), 2);
  EXPECT_EQ(enumerate_submodules(E).size(), 3u);
  auto XY = FiniteRing(truncated_polynomial_ring(2, {"x", "y"}, 2));
  auto E2 = injective_hull(XY);
  EXPECT_EQ(E2.length(), 3);
  EXPECT_EQ(socle(E2).length(), 1);
}

TEST(InjectiveHull, ExtensionProperty) {
  // length Hom(M,E) - length Hom(M/N,E) = length Hom(N,E) for every N <= M
  for (const auto& m : sample_modules()) {
    const auto E = injective_hull(m.ring());
    EXPECT_EQ(socle(E).length(), static_cast<int>(m.ring().factor_count()));
    auto lat = enumerate_submodules(m);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      auto n = lat.node(i);
      EXPECT_EQ(hom_length(m, E) - hom_length(quotient(m, n).module, E), hom_length(as_module(n).module, E));
    }
  }
}

TEST(Dual, Examples) {
  FiniteRing T(truncated_polynomial_ring(2, {"t"}, 4));
  auto R = regular_module(T);
  auto tr = matlis_dual(R);
  EXPECT_EQ(tr.module.length(), 4);
  EXPECT_EQ(socle(tr.module).length(), 1);  // T(R) = E has simple socle
  auto k = quotient_by(T, {{0, 1, 0, 0}});
  EXPECT_EQ(matlis_dual(k).module.length(), 1);
  auto m = quotient_by(T, {{0, 0, 1, 0}});
  auto tm = matlis_dual(m).module;
  EXPECT_EQ(tm.length(), 2);
  EXPECT_EQ(enumerate_submodules(tm).size(), 3u);
}

TEST(Dual, HomCountMatchesOracle) {
  for (const auto& m : sample_modules()) {
    if (m.layout().cardinality(64) == 0) continue;
    const auto E = injective_hull(m.ring());
    const auto t = matlis_dual(m);
    const auto homs = oracle::count_homs(oracle::Group(orders_of(m.layout())), m.actions(),
                                         oracle::Group(orders_of(E.layout()), 1 << 20), E.actions());
    EXPECT_EQ(homs, t.module.layout().cardinality(1 << 20)) << m.describe();
  }
}

TEST(Dual, PreservesLengthAndSwapsSocleAndTop) {
  for (const auto& m : sample_modules()) {
    auto t = matlis_dual(m).module;
    EXPECT_EQ(t.length(), m.length());
    const int top = t.length() - radical_power(t, 1).length();
    EXPECT_EQ(socle(m).length(), top);
  }
}

TEST(Dual, Exactness) {
  for (const auto& m : sample_modules()) {
    auto lat = enumerate_submodules(m);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      auto n = lat.node(i);
      EXPECT_EQ(matlis_dual(m).module.length(),
                matlis_dual(as_module(n).module).module.length() + matlis_dual(quotient(m, n).module).module.length());
    }
  }
}

TEST(Certificate, Examples) {
  auto z = zero_module(FiniteRing(cyclic_ring(2, 2)));
  EXPECT_TRUE(double_dual_certificate(z).witness.empty());
  auto c = double_dual_certificate(quotient_by(FiniteRing(cyclic_ring(2, 2)), {{2}}));
  ASSERT_EQ(c.witness.size(), 1u);
  EXPECT_EQ(c.witness[0].size(), 1u);
  auto d = double_dual_certificate(regular_module(truncated_polynomial_ring(2, {"x", "y"}, 2)));
  EXPECT_EQ(d.witness.size(), 3u);
  EXPECT_EQ(d.double_dual.module.length(), 3);
}

TEST(Zeta, OrderReversingInvolution) {
  for (const auto& m : sample_modules()) {
    auto cert = double_dual_certificate(m);
    auto lat = enumerate_submodules(m);
    auto tlat = enumerate_submodules(cert.dual.module);
    EXPECT_EQ(lat.size(), tlat.size());
    std::vector<Submodule> z;
    for (std::size_t i = 0; i < lat.size(); ++i) z.push_back(zeta(cert.dual, lat.node(i)));
    EXPECT_EQ(z.front(), full_submodule(cert.dual.module));
    EXPECT_TRUE(z.back().is_zero());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      EXPECT_EQ(zeta(cert.double_dual, z[i]), evaluate(cert, lat.node(i)));
      for (std::size_t j = 0; j < lat.size(); ++j)
        EXPECT_EQ(lat.node(j).includes(lat.node(i)), z[i].includes(z[j]));
    }
  }
}

TEST(Zeta, ChainOfZ4IsReversed) {
  auto m = regular_module(cyclic_ring(2, 2));
  auto t = matlis_dual(m);
  auto mid = span_submodule(m, {{2}});
  EXPECT_EQ(zeta(t, mid).length(), 1);
  EXPECT_EQ(zeta(t, zero_submodule(m)).length(), 2);
  EXPECT_EQ(zeta(t, full_submodule(m)).length(), 0);
}

TEST(Distance, Examples) {
  auto m = regular_module(cyclic_ring(2, 3));
  auto a = span_submodule(m, {{2}}), b = span_submodule(m, {{4}});
  EXPECT_EQ(submodule_distance(a, a), 0.0);
  EXPECT_EQ(distance_exponent(a, b), 1);
  EXPECT_DOUBLE_EQ(submodule_distance(a, b), std::exp(-1.0));
  for (int d = 2; d <= 5; ++d) {
    auto r = regular_module(truncated_polynomial_ring(2, {"t"}, d));
    EXPECT_EQ(distance_exponent(zero_submodule(r), radical_power(r, d - 1)), d - 1);
  }
}

TEST(Distance, UltrametricInequality) {
  auto m = regular_module(truncated_polynomial_ring(2, {"x", "y"}, 3));
  auto lat = enumerate_submodules(m);
  auto s = [&](std::size_t i, std::size_t j) {
    auto e = distance_exponent(lat.node(i), lat.node(j));
    return e ? *e : 1000;
  };
  for (std::size_t i = 0; i < lat.size(); i += 3)
    for (std::size_t j = 0; j < lat.size(); j += 5)
      for (std::size_t k = 0; k < lat.size(); k += 7) EXPECT_GE(s(i, k), std::min(s(i, j), s(j, k)));
}

TEST(Audit, NoViolations) {
  auto a = continuity_audit(regular_module(cyclic_ring(2, 4)));
  EXPECT_EQ(a.submodules, 5u);
  EXPECT_TRUE(a.violations.empty());
  auto b = continuity_audit(regular_module(truncated_polynomial_ring(2, {"x", "y"}, 3)));
  EXPECT_TRUE(b.violations.empty());
  EXPECT_GT(b.comparisons, 0u);
}

TEST(Audit, SocleLayersAreZetaOfRadicalPowers) {
  for (const auto& m : sample_modules()) {
    auto t = matlis_dual(m);
    for (int n = 0; n <= 4; ++n) {
      auto layer = torsion(t.module, product_power(radical(m.ring()), n));
      EXPECT_EQ(layer, zeta(t, radical_power(m, n)));
    }
  }
}
