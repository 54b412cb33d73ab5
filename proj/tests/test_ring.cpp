#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "modlat/error.hpp"
#include "modlat/oracle.hpp"
#include "modlat/ring.hpp"

using namespace modlat;

namespace {

std::vector<std::vector<Vec>> table_f2t3() {
  // basis 1, t, t^2
  return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
          {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}},
          {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::size_t oracle_ideal_count(const LocalAlgebra& R) {
  std::vector<oracle::Int> orders(R.dim(), R.modulus());
  oracle::Group g(orders);
  return g.invariant_subgroups(R.multiplication_matrices()).size();
}

}  // namespace

TEST(LocalAlgebra, FieldF2) {
  auto R = make_local_algebra(2, {{{1}}});
  EXPECT_EQ(R.dim(), 1u);
  EXPECT_EQ(R.nilpotency(), 1);
  EXPECT_EQ(enumerate_ideals(R).size(), 2u);
}

TEST(LocalAlgebra, TableMatchesPolynomialConstruction) {
  auto R = make_local_algebra(2, table_f2t3(), {"1", "t", "t^2"});
  auto S = truncated_polynomial_ring(2, {"t"}, 3);
  EXPECT_EQ(R.labels(), S.labels());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(R.basis_product(i, j), S.basis_product(i, j));
  EXPECT_EQ(R.nilpotency(), 3);
}

TEST(LocalAlgebra, ValidationErrors) {
  auto t = table_f2t3();
  t[1][2] = {0, 1, 0};
  EXPECT_EQ(code_of([&] { make_local_algebra(2, t); }), ErrorCode::NonCommutative);
  t = table_f2t3();
  t[0][1] = {0, 0, 1};
  t[1][0] = {0, 0, 1};
  EXPECT_EQ(code_of([&] { make_local_algebra(2, t); }), ErrorCode::NoUnit);
  // t*t = 1 + t^2 would make t a unit
  t = table_f2t3();
  t[1][1] = {1, 0, 1};
  const auto c = code_of([&] { make_local_algebra(2, t); });
  EXPECT_TRUE(c == ErrorCode::NonAssociative || c == ErrorCode::MaximalIdealNotNilpotent);
  // x*x = x: idempotent, associative and commutative, not nilpotent
  EXPECT_EQ(code_of([&] { make_local_algebra(2, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}}); }),
            ErrorCode::MaximalIdealNotNilpotent);
  // t*t = t^2, t*t^2 = t, t^2*t^2 = 0 breaks associativity
  t = table_f2t3();
  t[1][2] = {0, 1, 0};
  t[2][1] = {0, 1, 0};
  EXPECT_EQ(code_of([&] { make_local_algebra(2, t); }), ErrorCode::NonAssociative);
}

TEST(LocalAlgebra, AxiomsHoldOnAllTriples) {
  for (auto R : {truncated_polynomial_ring(2, {"x", "y"}, 3), truncated_polynomial_ring(3, {"t"}, 4),
                 truncated_polynomial_ring(2, {"X", "Y", "T"}, 4, {"T^3", "T^2*Y", "T*Y^2"}),
                 cyclic_ring(2, 3)}) {
    const auto m = R.dim();
    for (std::size_t a = 0; a < m; ++a) {
      EXPECT_EQ(R.multiply(R.one(), R.basis_vector(a)), R.basis_vector(a));
      for (std::size_t b = 0; b < m; ++b) {
        EXPECT_EQ(R.basis_product(a, b), R.basis_product(b, a));
        for (std::size_t c = 0; c < m; ++c) {
          EXPECT_EQ(R.multiply(R.basis_product(a, b), R.basis_vector(c)),
                    R.multiply(R.basis_vector(a), R.basis_product(b, c)));
        }
      }
    }
  }
}

TEST(TruncatedPoly, BasisSizes) {
  EXPECT_EQ(truncated_polynomial_ring(2, {"t"}, 4).dim(), 4u);
  auto R = truncated_polynomial_ring(2, {"x", "y"}, 3);
  EXPECT_EQ(R.labels(), (std::vector<std::string>{"1", "x", "y", "x^2", "x*y", "y^2"}));
  // monomials of degree < 4 in X,Y,T avoiding T^3, T^2Y, TY^2
  auto A = truncated_polynomial_ring(2, {"X", "Y", "T"}, 4, {"T^3", "T^2*Y", "T*Y^2"});
  EXPECT_EQ(A.dim(), 1u + 3u + 6u + 7u);
  EXPECT_THROW(truncated_polynomial_ring(2, {"a", "b", "c", "d"}, 12, {}, 100), Error);
}

TEST(TruncatedPoly, ParseMonomial) {
  std::vector<std::string> v{"X", "Y", "T"};
  EXPECT_EQ(parse_monomial(v, "T^2*Y"), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(parse_monomial(v, "1"), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(monomial_label(v, {2, 0, 1}), "X^2*T");
  EXPECT_THROW(parse_monomial(v, "Z"), Error);
  EXPECT_THROW(parse_monomial(v, "X^"), Error);
}

TEST(Ideals, SpanExamples) {
  auto R = truncated_polynomial_ring(2, {"t"}, 4);
  auto I = ideal_span(R, {R.basis_vector(2)});
  EXPECT_EQ(I.length(), 2);
  EXPECT_TRUE(I.contains({0, 0, 1, 1}));
  EXPECT_FALSE(I.contains({0, 1, 0, 0}));
  EXPECT_EQ(ideal_span(R, {R.one()}), unit_ideal(R));
  EXPECT_EQ(ideal_span(R, {}), zero_ideal(R));
}

TEST(Ideals, SpanIsOrderIndependent) {
  auto R = truncated_polynomial_ring(2, {"x", "y"}, 4);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Mat gens(3, Vec(R.dim()));
    for (auto& g : gens)
      for (auto& a : g) a = static_cast<Int>(rng() % 2);
    gens[0][0] = 0;
    auto a = ideal_span(R, gens);
    std::shuffle(gens.begin(), gens.end(), rng);
    EXPECT_EQ(a, ideal_span(R, gens));
  }
}

TEST(Ideals, Combine) {
  auto R = truncated_polynomial_ring(2, {"x", "y"}, 3);
  auto m = maximal_ideal(R);
  auto m2 = ideal_power(m, 2);
  EXPECT_EQ(m2.length(), 3);
  EXPECT_EQ(ideal_power(m, 0), unit_ideal(R));
  EXPECT_EQ(ideal_combine(IdealOp::Sum, m2, zero_ideal(R)), m2);
  auto S = truncated_polynomial_ring(2, {"t"}, 4);
  auto t = ideal_span(S, {S.basis_vector(1)});
  EXPECT_EQ(ideal_combine(IdealOp::Product, t, t), ideal_span(S, {S.basis_vector(2)}));
  EXPECT_EQ(ideal_combine(IdealOp::Intersection, t, ideal_span(S, {S.basis_vector(3)})).length(), 1);
  EXPECT_EQ(code_of([&] { ideal_combine(IdealOp::Sum, t, m); }), ErrorCode::MixedParents);
}

TEST(Ideals, GradedPieces) {
  auto R = truncated_polynomial_ring(2, {"x", "y"}, 4);
  EXPECT_EQ(graded_piece_dim(R, 2), 3);
  EXPECT_EQ(graded_piece_dim(truncated_polynomial_ring(2, {"t"}, 4), 2), 1);
  EXPECT_EQ(graded_piece_dim(R, 4), 0);
  EXPECT_EQ(graded_piece_dim(cyclic_ring(3, 3), 1), 1);
  for (int n = 0; n < 5; ++n) {
    auto m = maximal_ideal(R);
    EXPECT_EQ(graded_piece_dim(R, n), ideal_power(m, n).length() - ideal_power(m, n + 1).length());
  }
}

TEST(Ideals, EnumerationCounts) {
  EXPECT_EQ(enumerate_ideals(truncated_polynomial_ring(2, {"x", "y"}, 2)).size(), 6u);
  EXPECT_EQ(enumerate_ideals(truncated_polynomial_ring(2, {"t"}, 4)).size(), 5u);
  EXPECT_EQ(enumerate_ideals(cyclic_ring(2, 3)).size(), 4u);
  auto ideals = enumerate_ideals(truncated_polynomial_ring(2, {"t"}, 4));
  for (std::size_t i = 1; i < ideals.size(); ++i) EXPECT_TRUE(ideals[i].includes(ideals[i - 1]));
  EXPECT_THROW(enumerate_ideals(truncated_polynomial_ring(2, {"x", "y"}, 3), 3), Error);
}

TEST(Ideals, EnumerationMatchesOracle) {
  std::vector<LocalAlgebra> rings = {
      truncated_polynomial_ring(2, {"t"}, 5), truncated_polynomial_ring(2, {"x", "y"}, 2),
      truncated_polynomial_ring(2, {"x", "y"}, 3, {"y^2"}), truncated_polynomial_ring(2, {"x", "y", "z"}, 2),
      truncated_polynomial_ring(2, {"x", "y"}, 3, {"x*y"}), truncated_polynomial_ring(3, {"t"}, 3),
      cyclic_ring(2, 4), cyclic_ring(3, 2)};
  for (const auto& R : rings) EXPECT_EQ(enumerate_ideals(R).size(), oracle_ideal_count(R)) << R.describe();
}

TEST(Ideals, PrincipalPlusPowerMissesPower) {
  // For two or more variables no principal ideal covers M^n modulo M^{n+1}.
  for (int vars = 2; vars <= 3; ++vars) {
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(static_cast<std::size_t>(vars));
    for (int d = 3; d <= (vars == 2 ? 4 : 3); ++d) {
      auto R = truncated_polynomial_ring(2, names, d);
      if (R.dim() > 10) continue;
      auto m = maximal_ideal(R);
      for (int n = 1; n < d - 1; ++n) {
        auto mn = ideal_power(m, n), mn1 = ideal_power(m, n + 1);
        const std::size_t total = std::size_t{1} << R.dim();
        for (std::size_t code = 0; code < total; ++code) {
          Vec x(R.dim());
          for (std::size_t k = 0; k < R.dim(); ++k) x[k] = (code >> k) & 1U;
          if (x[0] != 0) continue;
          auto I = ideal_combine(IdealOp::Sum, ideal_span(R, {x}), mn1);
          EXPECT_FALSE(I.includes(mn));
        }
      }
    }
  }
}
