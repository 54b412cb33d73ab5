#include <gtest/gtest.h>

#include <set>

#include "modlat/error.hpp"
#include "modlat/oracle.hpp"
#include "modlat/tower.hpp"

using namespace modlat;

namespace {

Tower tower_of(const std::string& text) { return make_tower(parse_tower_spec(text)); }

const char* kSquareEmbeddingRing = "F_2[[X,Y,T]]/(T^3,T^2*Y,T*Y^2)";

// Distinct principal ideals R x, x in M, counted on bitsets of elements.
std::size_t principal_classes_oracle(const LocalAlgebra& R) {
  std::vector<oracle::Int> orders(R.dim(), R.modulus());
  oracle::Group G(orders);
  std::set<oracle::Bits> seen;
  for (std::size_t idx = 0; idx < G.size(); ++idx) {
    const auto x = G.element(idx);
    if (x[0] % R.p() != 0) continue;
    oracle::Mat gens;
    for (std::size_t i = 0; i < R.dim(); ++i) gens.push_back(R.multiply(R.basis_vector(i), x));
    seen.insert(G.generated(gens));
  }
  return seen.size();
}

}  // namespace

TEST(TowerSpec, ParseAndPrint) {
  auto s = parse_tower_spec(" F_2[[X, Y, T]] / (T^3, T^2*Y, T*Y^2) ");
  EXPECT_EQ(s.kind, TowerSpec::Kind::PowerSeries);
  EXPECT_EQ(s.vars.size(), 3u);
  EXPECT_EQ(s.relations.size(), 3u);
  EXPECT_EQ(s.text(), kSquareEmbeddingRing);
  EXPECT_EQ(parse_tower_spec(s.text()).text(), s.text());
  auto z = parse_tower_spec("Z_3");
  EXPECT_EQ(z.kind, TowerSpec::Kind::PAdic);
  EXPECT_EQ(z.p, 3);
  for (const char* bad : {"F_4[[x]]", "F_2[x]", "F_2[[x,x]]", "F_2[[x]]/(y)", "F_2[[x]]/(1)", "Q_2", "F_2[[x]]/x"}) {
    try {
      parse_tower_spec(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Tower, LevelsAreConsistent) {
  for (const char* t : {"F_2[[t]]", "F_3[[x,y]]", kSquareEmbeddingRing, "Z_2", "Z_5", "F_2[[x,y]]/(x*y)"}) {
    EXPECT_NO_THROW(make_tower(parse_tower_spec(t), 4)) << t;
  }
}

TEST(Tower, LiftProjectsBack) {
  auto T = tower_of("F_2[[x,y]]");
  for (int d = 1; d < 4; ++d) {
    auto lo = T.level(d);
    auto P = T.projection(d);
    zp::for_each_element(lo.layout(), [&](const Vec& x) {
      EXPECT_EQ(lo.layout().reduce(lo.layout().image(T.lift(d, x), P)), lo.layout().reduce(x));
    });
  }
}

TEST(HilbertSamuel, LengthsMatchMonomialCount) {
  struct Case {
    const char* spec;
    std::size_t nvars;
    std::vector<std::vector<int>> rels;
    int depth;
    int estimate;
  };
  const std::vector<Case> cases = {
      {"F_2[[t]]", 1, {}, 4, 1},
      {"F_2[[x,y]]", 2, {}, 4, 2},
      {"F_2[[x,y,z]]", 3, {}, 5, 3},
      {kSquareEmbeddingRing, 3, {{0, 0, 3}, {0, 1, 2}, {0, 2, 1}}, 6, 2},
  };
  for (const auto& c : cases) {
    auto hs = hilbert_samuel_profile(tower_of(c.spec), c.depth);
    ASSERT_EQ(hs.lengths.size(), static_cast<std::size_t>(c.depth));
    for (int d = 1; d <= c.depth; ++d) {
      EXPECT_EQ(static_cast<std::size_t>(hs.lengths[d - 1]), oracle::count_monomials(c.nvars, d, c.rels)) << c.spec << " d=" << d;
    }
    EXPECT_EQ(hs.krull_estimate, c.estimate) << c.spec;
  }
  EXPECT_EQ(hilbert_samuel_profile(tower_of("F_2[[x,y]]"), 4).lengths, (std::vector<int>{1, 3, 6, 10}));
  EXPECT_EQ(hilbert_samuel_profile(tower_of(kSquareEmbeddingRing), 6).lengths, (std::vector<int>{1, 4, 10, 17, 25, 34}));
}

TEST(HilbertSamuel, PAdicAndFinite) {
  EXPECT_EQ(hilbert_samuel_profile(tower_of("Z_3"), 4).krull_estimate, 1);
  EXPECT_EQ(hilbert_samuel_profile(tower_of("F_2[[x]]/(x^2)"), 4).krull_estimate, 0);
}

TEST(HilbertSamuel, ShortWindowDoesNotStabilize) {
  try {
    hilbert_samuel_profile(tower_of(kSquareEmbeddingRing), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStabilized);
    EXPECT_EQ(e.count(), 5u);
  }
}

TEST(IdealTree, SingleVariableIsAComb) {
  auto tree = ideal_tree(tower_of("F_2[[t]]"), 5);
  EXPECT_EQ(tree.level_sizes(), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  auto rep = branching_report(tree);
  EXPECT_EQ(rep.verdict, BranchingVerdict::Comb);
  EXPECT_EQ(rep.branching_per_level, (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(IdealTree, TwoVariablesBranchEverywhere) {
  auto tree = ideal_tree(tower_of("F_2[[x,y]]"), 4);
  auto rep = branching_report(tree);
  EXPECT_EQ(rep.verdict, BranchingVerdict::EverywhereBranching);
  EXPECT_GE(rep.min_degree, 2u);
  EXPECT_GE(rep.leaf_count, 8u);
}

TEST(IdealTree, LevelSizesMatchOracle) {
  for (const char* t : {"F_2[[t]]", "F_2[[x,y]]", "F_3[[t]]", "Z_2", "F_2[[x,y]]/(x*y)"}) {
    auto T = tower_of(t);
    const int depth = 4;
    auto sizes = ideal_tree(T, depth).level_sizes();
    EXPECT_EQ(sizes, ideal_tree_level_sizes_brute(T, depth)) << t;
    for (int n = 1; n <= depth; ++n) EXPECT_EQ(sizes[n - 1], principal_classes_oracle(T.level(n))) << t << n;
  }
}

TEST(IdealTree, ParentsContainChildren) {
  auto T = tower_of("F_2[[x,y]]");
  auto tree = ideal_tree(T, 4);
  for (int n = 1; n < 4; ++n) {
    auto P = T.projection(n);
    auto lo = T.level(n);
    for (std::size_t i = 0; i < tree.levels[n].size(); ++i) {
      Vec x = lo.layout().image(tree.representatives[n][i], P);
      EXPECT_EQ(ideal_span(lo, Mat{x}), tree.levels[n - 1][tree.parent[n][i]]);
    }
  }
}

TEST(IdealTree, DepthOneIsVacuous) {
  auto rep = branching_report(ideal_tree(tower_of("F_2[[x]]"), 1));
  EXPECT_EQ(rep.verdict, BranchingVerdict::Vacuous);
  EXPECT_EQ(rep.leaf_count, 1u);
}

TEST(IdealTree, BudgetIsEnforced) {
  try {
    ideal_tree(tower_of("F_2[[x,y]]"), 5, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(PairGrowth, CyclicTwoPower) {
  auto T = tower_of("Z_2");
  auto g = pair_growth(T, 6);
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(g[k - 1], std::size_t{1} << k);
  for (int k = 1; k <= 4; ++k) {
    oracle::Group G({oracle::Int{1} << k, oracle::Int{1} << k});
    const std::size_t total = G.all_subgroups().size();
    EXPECT_GT(total, std::size_t{1} << k);
    EXPECT_GT(total, static_cast<std::size_t>(k + 1));
    EXPECT_EQ(enumerate_ideals(T.level(k)).size(), static_cast<std::size_t>(k + 1));
  }
}

TEST(Predict, Verdicts) {
  auto t = tower_of("F_2[[t]]");
  auto xy = tower_of("F_2[[x,y]]");
  auto r = predict_cardinality(t, parse_module_spec("regular"));
  EXPECT_EQ(r.value, SymbolicCardinal::aleph0());
  EXPECT_EQ(r.tag, CardinalityTag::ChainOnly);
  r = predict_cardinality(t, parse_module_spec("square"));
  EXPECT_EQ(r.value, SymbolicCardinal::continuum());
  EXPECT_EQ(r.tag, CardinalityTag::SquareSubquotient);
  r = predict_cardinality(xy, parse_module_spec("regular"));
  EXPECT_EQ(r.tag, CardinalityTag::KrullDimGe2);
  r = predict_cardinality(xy, parse_module_spec("quotient(y)"));
  EXPECT_EQ(r.tag, CardinalityTag::ChainOnly);
  r = predict_cardinality(tower_of("Z_2"), parse_module_spec("regular"));
  EXPECT_EQ(r.value, SymbolicCardinal::aleph0());
  r = predict_cardinality(tower_of(kSquareEmbeddingRing), parse_module_spec("regular"));
  EXPECT_EQ(r.tag, CardinalityTag::KrullDimGe2);
  EXPECT_EQ(r.krull_estimate, 2);
}

TEST(Predict, FiniteQuotientCountsIdeals) {
  auto xy = tower_of("F_2[[x,y]]");
  auto r = predict_cardinality(xy, parse_module_spec("quotient(x^2,y^2)"));
  EXPECT_EQ(r.tag, CardinalityTag::FiniteLength);
  auto R = truncated_polynomial_ring(2, {"x", "y"}, 6, {"x^2", "y^2"});
  oracle::Group G(std::vector<oracle::Int>(R.dim(), 2));
  EXPECT_EQ(r.value, SymbolicCardinal::finite(G.invariant_subgroups(R.multiplication_matrices()).size()));
}

TEST(Predict, Unsupported) {
  for (auto [t, m] : {std::pair{"Z_2", "quotient(x)"}, std::pair{"F_2[[x,y]]", "quotient(x*y)"}}) {
    try {
      predict_cardinality(tower_of(t), parse_module_spec(m));
      ADD_FAILURE() << t << " " << m;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Unsupported);
    }
  }
}

TEST(ModuleSpec, Parse) {
  EXPECT_EQ(parse_module_spec("square( x , y^2 )").text(), "square(x,y^2)");
  EXPECT_EQ(parse_module_spec("regular").kind, ModuleSpec::Kind::Regular);
  for (const char* bad : {"regular(x)", "quotient", "cube", "square(x"}) {
    EXPECT_THROW(parse_module_spec(bad), Error) << bad;
  }
}

TEST(SquareEmbedding, DepthFour) {
  auto rep = square_embedding_check(tower_of(kSquareEmbeddingRing), 4, {"T*Y", "T^2"}, {"Y", "T", "X^2"});
  EXPECT_TRUE(rep.well_defined);
  EXPECT_TRUE(rep.linear);
  EXPECT_TRUE(rep.sends_units_to_generators);
  EXPECT_TRUE(rep.injective);
  EXPECT_TRUE(rep.onto_ideal);
  EXPECT_EQ(rep.domain_length, 4);
  EXPECT_EQ(rep.ideal_length, 4);
}

TEST(SquareEmbedding, FailsWithoutTheRelations) {
  // In F_2[[X,Y,T]] itself TY and T^2 are not independent over the quotient.
  auto rep = square_embedding_check(tower_of("F_2[[X,Y,T]]"), 4, {"T*Y", "T^2"}, {"Y", "T", "X^2"});
  EXPECT_FALSE(rep.ok());
}
