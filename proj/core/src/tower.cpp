#include "modlat/tower.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "modlat/error.hpp"

namespace modlat {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Int parse_prime(const std::string& digits, const std::string& text) {
  if (digits.empty() || digits.size() > 9 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    throw Error(ErrorCode::ParseError, "expected a prime in '" + text + "'");
  }
  Int p = std::stoll(digits);
  if (!zp::is_prime(p)) throw Error(ErrorCode::ParseError, digits + " is not prime");
  return p;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::optional<std::size_t> monomial_index(const LocalAlgebra& ring, const std::vector<int>& exps) {
  const auto& mons = ring.monomials();
  for (std::size_t i = 0; i < mons.size(); ++i)
    if (mons[i] == exps) return i;
  return std::nullopt;
}

/// The element of `ring` named by a monomial string (zero if it was truncated).
Vec monomial_element(const LocalAlgebra& ring, const std::string& text) {
  Vec v(ring.dim(), 0);
  if (auto i = monomial_index(ring, parse_monomial(ring.variables(), text))) v[*i] = 1;
  return v;
}

/// Every element of a subgroup.
std::vector<Vec> subgroup_elements(const zp::Layout& layout, const zp::Span& s, std::size_t budget) {
  zp::SubgroupBasis b = zp::basis_of(layout, s);
  if (b.layout.cardinality(budget) == 0) {
    throw Error(ErrorCode::BudgetExceeded, "subgroup has more than " + std::to_string(budget) + " elements");
  }
  std::vector<Vec> out;
  zp::for_each_element(b.layout, [&](const Vec& c) { out.push_back(layout.image(c, b.elements)); });
  return out;
}

void require_elements(const zp::Layout& layout, std::size_t budget) {
  if (layout.cardinality(budget) == 0) {
    throw Error(ErrorCode::BudgetExceeded, "ring has more than " + std::to_string(budget) + " elements");
  }
}

Vec concat(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::string TowerSpec::text() const {
  if (kind == Kind::PAdic) return "Z_" + std::to_string(p);
  std::string out = "F_" + std::to_string(p) + "[[";
  for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? "," : "") + vars[i];
  out += "]]";
  if (!relations.empty()) {
    out += "/(";
    for (std::size_t i = 0; i < relations.size(); ++i) out += (i ? "," : "") + relations[i];
    out += ")";
  }
  return out;
}

TowerSpec parse_tower_spec(const std::string& text) {
  const std::string s = strip_spaces(text);
  TowerSpec spec;
  if (s.rfind("Z_", 0) == 0) {
    spec.kind = TowerSpec::Kind::PAdic;
    spec.p = parse_prime(s.substr(2), text);
    return spec;
  }
  if (s.rfind("F_", 0) != 0) throw Error(ErrorCode::ParseError, "tower spec must start with F_p or Z_p: '" + text + "'");
  const auto open = s.find("[[");
  const auto close = s.find("]]");
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw Error(ErrorCode::ParseError, "expected [[variables]] in '" + text + "'");
  }
  spec.p = parse_prime(s.substr(2, open - 2), text);
  spec.vars = split_list(s.substr(open + 2, close - open - 2));
  std::set<std::string> seen;
  for (const auto& v : spec.vars) {
    if (!is_identifier(v)) throw Error(ErrorCode::ParseError, "bad variable name '" + v + "'");
    if (!seen.insert(v).second) throw Error(ErrorCode::ParseError, "repeated variable '" + v + "'");
  }
  std::string rest = s.substr(close + 2);
  if (!rest.empty()) {
    if (rest.size() < 3 || rest.substr(0, 2) != "/(" || rest.back() != ')') {
      throw Error(ErrorCode::ParseError, "expected /(relations) after variables in '" + text + "'");
    }
    spec.relations = split_list(rest.substr(2, rest.size() - 3));
    for (const auto& r : spec.relations) {
      const auto exps = parse_monomial(spec.vars, r);
      if (std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; })) {
        throw Error(ErrorCode::ParseError, "relation '1' kills the whole ring");
      }
    }
  }
  return spec;
}

Tower::Tower(TowerSpec spec, std::size_t max_dim) : spec_(std::move(spec)), max_dim_(max_dim) {
  if (!zp::is_prime(spec_.p)) throw Error(ErrorCode::InvalidArgument, std::to_string(spec_.p) + " is not prime");
  if (spec_.kind == TowerSpec::Kind::PowerSeries && spec_.vars.empty()) {
    throw Error(ErrorCode::InvalidArgument, "power series tower needs a variable");
  }
}

LocalAlgebra Tower::level(int d) const {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "tower levels start at 1");
  if (spec_.kind == TowerSpec::Kind::PAdic) return cyclic_ring(spec_.p, d);
  return truncated_polynomial_ring(spec_.p, spec_.vars, d, spec_.relations, max_dim_);
}

Mat Tower::projection(int d) const {
  const LocalAlgebra hi = level(d + 1);
  const LocalAlgebra lo = level(d);
  Mat P(hi.dim(), Vec(lo.dim(), 0));
  if (spec_.kind == TowerSpec::Kind::PAdic) {
    P[0][0] = 1;
    return P;
  }
  for (std::size_t i = 0; i < hi.dim(); ++i)
    if (auto j = monomial_index(lo, hi.monomials()[i])) P[i][*j] = 1;
  return P;
}

Vec Tower::lift(int d, const Vec& x) const {
  if (spec_.kind == TowerSpec::Kind::PAdic) return x;
  const LocalAlgebra hi = level(d + 1);
  const LocalAlgebra lo = level(d);
  Vec out(hi.dim(), 0);
  for (std::size_t j = 0; j < lo.dim(); ++j)
    if (x[j] != 0) out[*monomial_index(hi, lo.monomials()[j])] = x[j];
  return out;
}

void Tower::check_levels(int d) const {
  auto fail = [&](int e, const std::string& why) {
    throw Error(ErrorCode::InconsistentLevels, "level " + std::to_string(e + 1) + " -> " + std::to_string(e) + ": " + why);
  };
  for (int e = 1; e <= d; ++e) {
    const LocalAlgebra lo = level(e);
    if (!ideal_power(maximal_ideal(lo), e).is_zero()) fail(e, "M^d is nonzero at level d");
    if (e == d) break;
    const LocalAlgebra hi = level(e + 1);
    const Mat P = projection(e);
    const auto& L = lo.layout();
    if (!L.is_zero(L.add(L.image(hi.one(), P), L.scale(lo.one(), -1)))) fail(e, "projection does not preserve 1");
    for (std::size_t i = 0; i < hi.dim(); ++i) {
      for (std::size_t j = i; j < hi.dim(); ++j) {
        const Vec lhs = L.image(hi.basis_product(i, j), P);
        const Vec rhs = lo.multiply(L.image(hi.basis_vector(i), P), L.image(hi.basis_vector(j), P));
        if (!L.is_zero(L.add(lhs, L.scale(rhs, -1)))) {
          fail(e, "projection is not multiplicative on " + hi.labels()[i] + "*" + hi.labels()[j]);
        }
      }
    }
    if (!(zp::span(L, P) == zp::full_span(L))) fail(e, "projection is not surjective");
    Mat units;
    for (std::size_t i = 0; i < hi.dim(); ++i) units.push_back(hi.basis_vector(i));
    const zp::Span ker = zp::kernel(hi.layout(), units, L, P);
    if (!(ker == ideal_power(maximal_ideal(hi), e).span())) fail(e, "kernel differs from M^d");
  }
}

Tower make_tower(const TowerSpec& spec, int check_depth, std::size_t max_dim) {
  Tower t(spec, max_dim);
  if (check_depth > 0) t.check_levels(check_depth);
  return t;
}

HilbertSamuel hilbert_samuel_profile(const Tower& tower, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  HilbertSamuel hs;
  std::vector<long long> seq{0};
  for (int d = 1; d <= depth; ++d) {
    hs.lengths.push_back(tower.level(d).length());
    seq.push_back(hs.lengths.back());
  }
  for (int k = 0; seq.size() >= 3; ++k) {
    const std::size_t n = seq.size();
    if (seq[n - 1] == seq[n - 2] && seq[n - 2] == seq[n - 3]) {
      hs.krull_estimate = k;
      return hs;
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) seq[i] = seq[i + 1] - seq[i];
    seq.pop_back();
  }
  throw Error(ErrorCode::NotStabilized,
              "Hilbert-Samuel differences of " + tower.spec().text() + " not constant by depth " + std::to_string(depth),
              static_cast<std::size_t>(depth));
}

std::vector<std::size_t> IdealTree::level_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l.size());
  return out;
}

std::vector<std::vector<std::size_t>> IdealTree::child_counts() const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
    std::vector<std::size_t> c(levels[n].size(), 0);
    for (std::size_t par : parent[n + 1]) ++c[par];
    out.push_back(std::move(c));
  }
  return out;
}

IdealTree ideal_tree(const Tower& tower, int depth, std::size_t element_budget) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  IdealTree tree;
  tree.depth = depth;
  LocalAlgebra lo = tower.level(1);
  tree.levels.push_back({zero_ideal(lo)});
  tree.representatives.push_back({Vec(lo.dim(), 0)});
  tree.parent.push_back({0});
  std::size_t work = 0;
  for (int n = 1; n < depth; ++n) {
    const LocalAlgebra hi = tower.level(n + 1);
    // Every generator of a class lifts to x~ + z with z in M^n, up to a unit.
    const auto shifts = subgroup_elements(hi.layout(), ideal_power(maximal_ideal(hi), n).span(), element_budget);
    std::vector<Ideal> ideals;
    std::vector<Vec> reps;
    std::vector<std::size_t> parents;
    const auto& prev = tree.representatives.back();
    for (std::size_t i = 0; i < prev.size(); ++i) {
      work += shifts.size();
      if (work > element_budget) {
        throw Error(ErrorCode::BudgetExceeded, "ideal tree exceeds the element budget at level " + std::to_string(n + 1),
                    ideals.size());
      }
      const Vec base = tower.lift(n, prev[i]);
      std::set<zp::Span> seen;
      for (const auto& z : shifts) {
        const Vec y = hi.layout().add(base, z);
        Ideal I = ideal_span(hi, Mat{y});
        if (!seen.insert(I.span()).second) continue;
        ideals.push_back(std::move(I));
        reps.push_back(y);
        parents.push_back(i);
      }
    }
    tree.levels.push_back(std::move(ideals));
    tree.representatives.push_back(std::move(reps));
    tree.parent.push_back(std::move(parents));
  }
  return tree;
}

std::vector<std::size_t> ideal_tree_level_sizes_brute(const Tower& tower, int depth, std::size_t element_budget) {
  std::vector<std::size_t> out;
  for (int n = 1; n <= depth; ++n) {
    const LocalAlgebra R = tower.level(n);
    require_elements(R.layout(), element_budget);
    const Ideal M = maximal_ideal(R);
    std::set<zp::Span> classes;
    zp::for_each_element(R.layout(), [&](const Vec& x) {
      if (M.contains(x)) classes.insert(ideal_span(R, Mat{x}).span());
    });
    out.push_back(classes.size());
  }
  return out;
}

const char* to_string(BranchingVerdict v) noexcept {
  switch (v) {
    case BranchingVerdict::Vacuous: return "Vacuous";
    case BranchingVerdict::EverywhereBranching: return "EverywhereBranching";
    case BranchingVerdict::Comb: return "Comb";
    case BranchingVerdict::Chain: return "Chain";
    case BranchingVerdict::Mixed: return "Mixed";
  }
  return "?";
}

BranchingReport branching_report(const IdealTree& tree) {
  BranchingReport r;
  r.degrees = tree.child_counts();
  r.leaf_count = tree.levels.empty() ? 0 : tree.levels.back().size();
  if (r.degrees.empty()) return r;
  bool everywhere = true;
  bool comb = true;
  bool any = false;
  r.min_degree = r.degrees.front().front();
  for (const auto& level : r.degrees) {
    std::size_t branching = 0;
    for (std::size_t d : level) {
      ++r.histogram[d];
      r.min_degree = std::min(r.min_degree, d);
      if (d >= 2) ++branching;
      else everywhere = false;
    }
    r.branching_per_level.push_back(branching);
    if (branching != 1) comb = false;
    if (branching > 0) any = true;
  }
  if (everywhere) r.verdict = BranchingVerdict::EverywhereBranching;
  else if (comb) r.verdict = BranchingVerdict::Comb;
  else if (!any) r.verdict = BranchingVerdict::Chain;
  else r.verdict = BranchingVerdict::Mixed;
  return r;
}

std::vector<std::size_t> pair_growth(const Tower& tower, int depth, std::size_t element_budget) {
  std::vector<std::size_t> out;
  for (int d = 1; d <= depth; ++d) {
    const LocalAlgebra R = tower.level(d);
    require_elements(R.layout(), element_budget);
    const FiniteModule reg = regular_module(FiniteRing(R));
    const FiniteModule sq = direct_sum({reg, reg});
    std::set<zp::Span> seen;
    const Vec one = R.one();
    zp::for_each_element(R.layout(), [&](const Vec& b) {
      seen.insert(span_submodule(sq, Mat{concat(one, b)}).span());
    });
    out.push_back(seen.size());
  }
  return out;
}

std::string ModuleSpec::text() const {
  std::string out = kind == Kind::Regular ? "regular" : kind == Kind::Square ? "square" : "quotient";
  if (kind != Kind::Regular && !monomials.empty()) {
    out += "(";
    for (std::size_t i = 0; i < monomials.size(); ++i) out += (i ? "," : "") + monomials[i];
    out += ")";
  }
  return out;
}

ModuleSpec parse_module_spec(const std::string& text) {
  const std::string s = strip_spaces(text);
  ModuleSpec m;
  const auto paren = s.find('(');
  const std::string head = s.substr(0, paren);
  if (head == "regular") m.kind = ModuleSpec::Kind::Regular;
  else if (head == "square") m.kind = ModuleSpec::Kind::Square;
  else if (head == "quotient") m.kind = ModuleSpec::Kind::Quotient;
  else throw Error(ErrorCode::ParseError, "unknown module spec '" + text + "'");
  if (paren != std::string::npos) {
    if (m.kind == ModuleSpec::Kind::Regular || s.back() != ')' || s.size() - paren < 3) {
      throw Error(ErrorCode::ParseError, "malformed module spec '" + text + "'");
    }
    m.monomials = split_list(s.substr(paren + 1, s.size() - paren - 2));
  } else if (m.kind == ModuleSpec::Kind::Quotient) {
    throw Error(ErrorCode::ParseError, "quotient needs a monomial list: '" + text + "'");
  }
  return m;
}

const char* to_string(CardinalityTag t) noexcept {
  switch (t) {
    case CardinalityTag::KrullDimGe2: return "KrullDimGe2";
    case CardinalityTag::SquareSubquotient: return "SquareSubquotient";
    case CardinalityTag::ChainOnly: return "ChainOnly";
    case CardinalityTag::FiniteLength: return "FiniteLength";
  }
  return "?";
}

CardinalityPrediction predict_cardinality(const Tower& tower, const ModuleSpec& spec, int depth,
                                          std::size_t element_budget) {
  TowerSpec ts = tower.spec();
  if (!spec.monomials.empty()) {
    if (ts.kind == TowerSpec::Kind::PAdic) {
      throw Error(ErrorCode::Unsupported, "monomial quotients of a p-adic tower");
    }
    for (const auto& m : spec.monomials) parse_monomial(ts.vars, m);
    ts.relations.insert(ts.relations.end(), spec.monomials.begin(), spec.monomials.end());
  }
  const Tower quotient_tower(ts);
  const HilbertSamuel hs = hilbert_samuel_profile(quotient_tower, depth);
  const bool square = spec.kind == ModuleSpec::Kind::Square;
  CardinalityPrediction out;
  out.krull_estimate = hs.krull_estimate;
  if (hs.krull_estimate == 0) {
    const FiniteModule reg = regular_module(FiniteRing(quotient_tower.level(depth)));
    const FiniteModule m = square ? direct_sum({reg, reg}) : reg;
    out.value = SymbolicCardinal::finite(enumerate_submodules(m, kDefaultNodeLimit, element_budget).size());
    out.tag = CardinalityTag::FiniteLength;
    return out;
  }
  if (hs.krull_estimate >= 2) {
    out.value = SymbolicCardinal::continuum();
    out.tag = CardinalityTag::KrullDimGe2;
    return out;
  }
  if (square) {
    out.value = SymbolicCardinal::continuum();
    out.tag = CardinalityTag::SquareSubquotient;
    return out;
  }
  const LocalAlgebra top = quotient_tower.level(depth);
  for (int n = 1; n < depth; ++n) {
    if (graded_piece_dim(top, n) > 1) {
      throw Error(ErrorCode::Unsupported, "dimension-one tower " + ts.text() + " is not a chain ring");
    }
  }
  out.value = SymbolicCardinal::aleph0();
  out.tag = CardinalityTag::ChainOnly;
  return out;
}

SquareEmbeddingReport square_embedding_check(const Tower& tower, int depth,
                                             const std::vector<std::string>& generators,
                                             const std::vector<std::string>& killed) {
  if (tower.spec().kind != TowerSpec::Kind::PowerSeries) {
    throw Error(ErrorCode::Unsupported, "square embedding needs a power series tower");
  }
  if (generators.size() != 2) throw Error(ErrorCode::InvalidArgument, "need exactly two generators");
  const LocalAlgebra R = tower.level(depth);
  const FiniteRing ring(R);
  const FiniteModule reg = regular_module(ring);
  Mat kill;
  for (const auto& k : killed) kill.push_back(monomial_element(R, k));
  const QuotientModule B = quotient(reg, span_submodule(reg, kill));
  const FiniteModule dom = direct_sum({B.module, B.module});
  const Vec g1 = monomial_element(R, generators[0]);
  const Vec g2 = monomial_element(R, generators[1]);

  Mat W;
  for (const auto& l : B.lift) W.push_back(R.multiply(l, g1));
  for (const auto& l : B.lift) W.push_back(R.multiply(l, g2));
  const MapCheck check = check_module_map(dom, reg, W);

  SquareEmbeddingReport rep;
  rep.depth = depth;
  rep.domain_length = dom.length();
  const Ideal target = ideal_span(R, Mat{g1, g2});
  rep.ideal_length = target.length();
  rep.well_defined = check.well_defined;
  rep.linear = check.linear;
  rep.injective = check.injective;
  rep.onto_ideal = check.image == target.span();
  const Vec unit = B.module.layout().image(R.one(), B.projection);
  const Vec zero(unit.size(), 0);
  const auto& L = R.layout();
  rep.sends_units_to_generators =
      L.is_zero(L.add(L.image(concat(unit, zero), W), L.scale(g1, -1))) &&
      L.is_zero(L.add(L.image(concat(zero, unit), W), L.scale(g2, -1)));
  return rep;
}

}  // namespace modlat
