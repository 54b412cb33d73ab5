#include <gtest/gtest.h>

#include "modlat/error.hpp"
#include "modlat/oracle.hpp"
#include "modlat/zmodule.hpp"

using namespace modlat;

namespace {

MinimaxDescriptor D(const std::string& s) { return parse_descriptor(s); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Descriptor, ParseCanonicalText) {
  EXPECT_EQ(D("Z + Z/8 + Prufer(3) + Z[1/{2,5}]").text(), "Z + Z[1/{2,5}] + Z/8 + Prufer(3)");
  EXPECT_EQ(D("Z/12").text(), "Z/4 + Z/3");
  EXPECT_EQ(D("Prüfer(2)^2").text(), "2*Prufer(2)");
  EXPECT_EQ(D("inf*Z/2").text(), "inf*Z/2");
  EXPECT_EQ(D("Z/2 + Z/2").text(), "2*Z/2");
  EXPECT_EQ(D("0").text(), "0");
  EXPECT_EQ(D("Z/1").text(), "0");
  EXPECT_EQ(D("Q").text(), "Q");
  EXPECT_EQ(D("Z[1/{5,2,2}]").text(), "Z[1/{2,5}]");
  for (const char* s : {"Z + Z + Q + 3*Z/9 + Prufer(7)^inf", "Z[1/3]^2 + Z/6"}) {
    EXPECT_EQ(D(D(s).text()), D(s)) << s;
  }
  for (const char* bad : {"", "Z +", "Prufer(4)", "Z/0", "Z[1/6]", "R", "Z/x", "2**Z"}) {
    EXPECT_EQ(code_of([&] { D(bad); }), ErrorCode::ParseError) << bad;
  }
}

TEST(Decisions, Minimax) {
  EXPECT_TRUE(is_minimax(D("Z + Prufer(2)")));
  EXPECT_FALSE(is_minimax(D("inf*Z/2")));
  EXPECT_FALSE(is_minimax(D("Q")));
  EXPECT_TRUE(is_minimax(D("Z[1/{2,3}] + Z/5")));
}

TEST(Decisions, ArtinianQuotient) {
  EXPECT_EQ(artinian_quotient(D("Z[1/2]")), D("Prufer(2)"));
  EXPECT_TRUE(artinian_quotient(D("Z^3")).is_zero());
  EXPECT_EQ(artinian_quotient(D("Prufer(3) + Z/9")), D("Prufer(3) + Z/9"));
  EXPECT_EQ(artinian_quotient(D("Z[1/2] + Prufer(2)")), D("Prufer(2)^2"));
  EXPECT_EQ(code_of([] { artinian_quotient(D("Q")); }), ErrorCode::NotMinimax);
}

TEST(Decisions, CountSubmodules) {
  EXPECT_EQ(count_submodules(D("Prufer(2)")), SymbolicCardinal::aleph0());
  EXPECT_EQ(count_submodules(D("Z")), SymbolicCardinal::aleph0());
  EXPECT_EQ(count_submodules(D("Z/2 + Prufer(3)")), SymbolicCardinal::aleph0());
  EXPECT_EQ(count_submodules(D("Prufer(2)^2")), SymbolicCardinal::continuum());
  EXPECT_EQ(count_submodules(D("Z[1/2] + Prufer(2)")), SymbolicCardinal::continuum());
  EXPECT_EQ(count_submodules(D("Q")), SymbolicCardinal::continuum());
  EXPECT_EQ(count_submodules(D("inf*Z/2")), SymbolicCardinal::continuum());
  EXPECT_EQ(count_submodules(D("Z/4")), SymbolicCardinal::finite(3));
  EXPECT_EQ(count_submodules(D("0")), SymbolicCardinal::finite(1));
  EXPECT_EQ(count_submodules(D("Z/12")), SymbolicCardinal::finite(6));
}

TEST(Decisions, BirkhoffCountMatchesOracle) {
  const std::vector<std::pair<oracle::Int, std::vector<int>>> types = {
      {2, {1}}, {2, {2, 1}}, {2, {1, 1, 1}}, {2, {3, 1}}, {2, {2, 2}}, {2, {2, 1, 1}},
      {3, {1, 1}}, {3, {2, 1}}, {5, {1, 1}}, {2, {4}}, {3, {2, 2}}, {2, {1, 1, 1, 1}}};
  for (const auto& [p, lambda] : types) {
    std::vector<oracle::Int> orders;
    for (int e : lambda) orders.push_back(zp::power(p, e));
    oracle::Group G(orders);
    EXPECT_EQ(count_p_subgroups(p, lambda), G.all_subgroups().size()) << p;
  }
  EXPECT_EQ(count_p_subgroups(2, {}), 1u);
}

TEST(Decisions, FiniteCountMatchesEnumeration) {
  for (const char* s : {"Z/4 + Z/2", "Z/12 + Z/2", "Z/9 + Z/3 + Z/2", "Z/8 + Z/4"}) {
    auto d = D(s);
    std::vector<FiniteModule> parts;
    const FiniteRing Z = zmod_ring(72);
    for (const auto& [key, m] : d.torsion) {
      const Int order = zp::power(key.first, key.second);
      for (std::uint64_t i = 0; i < m.n; ++i) {
        Vec gen(Z.dim(), 0);
        for (std::size_t f = 0; f < Z.factor_count(); ++f) gen[Z.offset(f)] = order;
        parts.push_back(cyclic_quotient(product_ideal_span(Z, Mat{Z.layout().reduce(gen)})));
      }
    }
    EXPECT_EQ(count_submodules(d), SymbolicCardinal::finite(enumerate_submodules(direct_sum(parts)).size())) << s;
  }
}

TEST(Decisions, Meager) {
  EXPECT_TRUE(is_meager_z(D("Z/4 + Z/3 + Prufer(5)")));
  EXPECT_FALSE(is_meager_z(D("Z + Z/2")));
  EXPECT_TRUE(is_meager_z(D("Z[1/2]")));
  EXPECT_TRUE(is_meager_z(D("Q")));
  EXPECT_FALSE(is_meager_z(D("Z/2 + Prufer(2)")));
  EXPECT_FALSE(is_meager_z(D("Z^2")));
  EXPECT_TRUE(is_meager_z(D("0")));
}

TEST(Decisions, OrdinalLength) {
  EXPECT_EQ(ordinal_length_class(D("Z")).kind, OrdinalLength::Kind::Omega);
  EXPECT_EQ(ordinal_length_class(D("Z/6")), (OrdinalLength{OrdinalLength::Kind::Finite, 2}));
  EXPECT_EQ(ordinal_length_class(D("Z + Z/2")).kind, OrdinalLength::Kind::OmegaPlusOne);
  EXPECT_EQ(ordinal_length_class(D("Z + Z/4")).kind, OrdinalLength::Kind::AboveOmegaPlusOne);
  EXPECT_EQ(ordinal_length_class(D("Z^2")).kind, OrdinalLength::Kind::AboveOmegaPlusOne);
  EXPECT_EQ(ordinal_length_class(D("2*Z/8 + Z/3")).n, 7u);
  EXPECT_EQ(code_of([] { ordinal_length_class(D("Prufer(2)")); }), ErrorCode::NotFinitelyGenerated);
  EXPECT_EQ(code_of([] { ordinal_length_class(D("Z[1/3]")); }), ErrorCode::NotFinitelyGenerated);
}

TEST(Decisions, Uniserial) {
  auto u = uniserial_z(D("Z/8"));
  EXPECT_TRUE(u.uniserial);
  EXPECT_EQ(u.tag, UniserialCase::FiniteChain);
  u = uniserial_z(D("Prufer(2)"));
  EXPECT_EQ(u.tag, UniserialCase::PruferCase);
  EXPECT_FALSE(uniserial_z(D("Z/2 + Z/3")).uniserial);
  EXPECT_FALSE(uniserial_z(D("Z")).uniserial);
  EXPECT_FALSE(uniserial_z(D("Q")).uniserial);
}

TEST(Decisions, CrossRuleProperties) {
  const char* samples[] = {"Z", "Q", "Z/8", "Prufer(2)", "Prufer(2)^2", "Z/4 + Z/3 + Prufer(5)", "Z[1/2]",
                           "Z + Z/2", "inf*Z/3", "Z[1/{2,3}] + Prufer(3)", "Z/2 + Z/3", "0", "2*Z/2"};
  for (const char* s : samples) {
    auto d = D(s);
    if (!is_minimax(d)) EXPECT_EQ(count_submodules(d), SymbolicCardinal::continuum()) << s;
    if (uniserial_z(d).uniserial) EXPECT_TRUE(is_meager_z(d)) << s;
    if (is_meager_z(d) && is_minimax(d)) EXPECT_LE(count_submodules(d), SymbolicCardinal::aleph0()) << s;
  }
}

TEST(Crosscheck, Examples) {
  auto r = truncation_crosscheck(D("Prufer(2)"), 2, 5);
  EXPECT_EQ(r.count, 6u);
  EXPECT_TRUE(r.uniserial);
  EXPECT_EQ(r.claim, CrosscheckReport::Claim::Chain);
  EXPECT_TRUE(r.consistent);

  r = truncation_crosscheck(D("Prufer(2)^2"), 2, 3);
  EXPECT_GE(r.count, 8u);
  EXPECT_EQ(r.claim, CrosscheckReport::Claim::Exponential);
  EXPECT_TRUE(r.consistent);

  for (int k = 2; k <= 4; ++k) {
    r = truncation_crosscheck(D("Z/4"), 2, k);
    EXPECT_EQ(r.count, 3u);
    EXPECT_EQ(r.claim, CrosscheckReport::Claim::Exact);
    EXPECT_TRUE(r.consistent);
  }
}

TEST(Crosscheck, GrowthUpToSix) {
  for (int k = 1; k <= 6; ++k) {
    auto chain = truncation_crosscheck(D("Prufer(2)"), 2, k);
    EXPECT_EQ(chain.count, static_cast<std::uint64_t>(k + 1));
    for (const char* s : {"Prufer(2)^2", "Z[1/2] + Prufer(2)", "Z^2"}) {
      auto r = truncation_crosscheck(D(s), 2, k);
      if (r.claim == CrosscheckReport::Claim::Exponential) EXPECT_GE(r.count, std::uint64_t{1} << k) << s;
      EXPECT_TRUE(r.consistent) << s << " k=" << k;
    }
  }
}

TEST(Crosscheck, ContinuumMarkersAtFour) {
  for (const char* s : {"Prufer(2)^2", "Z[1/2] + Prufer(2)", "Q", "inf*Z/2"}) {
    auto r = truncation_crosscheck(D(s), 2, 4);
    EXPECT_EQ(r.verdict, SymbolicCardinal::continuum()) << s;
    EXPECT_EQ(r.claim, CrosscheckReport::Claim::Exponential) << s;
    EXPECT_TRUE(r.consistent) << s << " count " << r.count;
  }
  EXPECT_EQ(truncation_crosscheck(D("Q"), 2, 4).count, 16u);
}

TEST(Crosscheck, TrivialPrimePart) {
  EXPECT_EQ(code_of([] { truncation_model(D("Z/3"), 2, 3); }), ErrorCode::InvalidArgument);
}
