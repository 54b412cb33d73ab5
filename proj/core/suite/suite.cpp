#include "modlat/suite.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <set>
#include <sstream>

#include "modlat/classify.hpp"
#include "modlat/error.hpp"
#include "modlat/matlis.hpp"
#include "modlat/oracle.hpp"
#include "modlat/tower.hpp"
#include "modlat/zmodule.hpp"

namespace modlat::suite {

namespace {

using Clock = std::chrono::steady_clock;

const char* kSquareEmbeddingTower = "F_2[[X,Y,T]]/(T^3,T^2*Y,T*Y^2)";

/// Collects the first few failures of a check.
class Failures {
 public:
  void add(const std::string& what) {
    ++count_;
    if (count_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  std::size_t count() const { return count_; }
  std::string summary() const {
    return count_ == 0 ? std::string() : std::to_string(count_) + " failure(s): " + notes_;
  }

 private:
  std::size_t count_ = 0;
  std::string notes_;
};

CheckResult timed(int id, std::string name, double limit, const std::function<std::string(Failures&)>& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  Failures f;
  const auto start = Clock::now();
  try {
    r.detail = body(f);
  } catch (const std::exception& e) {
    f.add(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit > 0 && r.seconds > limit) f.add("took " + std::to_string(r.seconds) + "s, limit " + std::to_string(limit) + "s");
  r.passed = f.count() == 0;
  if (!r.passed) r.detail = f.summary() + (r.detail.empty() ? "" : " | " + r.detail);
  return r;
}

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Vec random_element(std::mt19937_64& rng, const zp::Layout& L) {
  Vec x(L.size());
  for (std::size_t j = 0; j < L.size(); ++j) x[j] = static_cast<Int>(pick(rng, static_cast<std::uint64_t>(L.order_of(j))));
  return x;
}

std::vector<oracle::Int> orders_of(const zp::Layout& L) {
  std::vector<oracle::Int> out;
  for (std::size_t j = 0; j < L.size(); ++j) out.push_back(L.order_of(j));
  return out;
}

/// Compares our enumeration with the oracle's invariant subgroups as sets.
bool same_subgroups(const zp::Layout& L, const std::vector<zp::Span>& ours, const std::vector<Mat>& actions) {
  oracle::Group G(orders_of(L));
  std::set<oracle::Bits> mine;
  for (const auto& s : ours) mine.insert(G.generated(zp::generators(L, s)));
  const auto theirs = G.invariant_subgroups(actions);
  return mine.size() == ours.size() && mine == std::set<oracle::Bits>(theirs.begin(), theirs.end()) &&
         theirs.size() == ours.size();
}

std::vector<LocalAlgebra> extra_f2_algebras() {
  return {truncated_polynomial_ring(2, {"x", "y"}, 3, {"x^2", "y^2"}),
          truncated_polynomial_ring(2, {"x", "y", "z"}, 2),
          truncated_polynomial_ring(2, {"x", "y"}, 4, {"x^2", "x*y"}),
          truncated_polynomial_ring(2, {"x", "y"}, 4, {"x*y", "y^2"}),
          truncated_polynomial_ring(2, {"x", "y"}, 3, {"x^2", "x*y"})};
}

}  // namespace

std::vector<LocalAlgebra> corpus_algebras() {
  std::vector<LocalAlgebra> all;
  auto add = [&](LocalAlgebra a) {
    for (const auto& b : all)
      if (a == b) return;
    all.push_back(std::move(a));
  };
  for (Int p : {2, 3})
    for (int d = 1; d <= 5; ++d) add(truncated_polynomial_ring(p, {"t"}, d));
  for (int d = 1; d <= 3; ++d) add(truncated_polynomial_ring(2, {"x", "y"}, d));
  for (Int p : {2, 3})
    for (int k = 1; k <= 4; ++k) add(cyclic_ring(p, k));
  return all;
}

std::vector<FiniteModule> corpus_modules(const LocalAlgebra& ring, int max_length) {
  const FiniteRing R(ring);
  std::vector<FiniteModule> cyclic;
  for (const auto& I : enumerate_ideals(ring)) {
    const int len = ring.length() - I.length();
    if (len >= 1 && len <= max_length) cyclic.push_back(cyclic_quotient(ProductIdeal(R, {I})));
  }
  std::vector<FiniteModule> out = cyclic;
  for (std::size_t i = 0; i < cyclic.size(); ++i)
    for (std::size_t j = i; j < cyclic.size(); ++j)
      if (cyclic[i].length() + cyclic[j].length() <= max_length) out.push_back(direct_sum({cyclic[i], cyclic[j]}));
  if (ring.length() <= max_length) out.push_back(injective_hull(R));
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(matlis_dual(out[i]).module);
  return out;
}

std::vector<FiniteRing> random_rings(bool decomposition_rings) {
  std::vector<FiniteRing> rings = {
      zmod_ring(12), zmod_ring(36),
      FiniteRing({truncated_polynomial_ring(2, {"t"}, 3), truncated_polynomial_ring(3, {"s"}, 2)})};
  if (!decomposition_rings) {
    rings.push_back(truncated_polynomial_ring(2, {"x", "y"}, 2));
    rings.push_back(truncated_polynomial_ring(2, {"t"}, 4));
    rings.push_back(cyclic_ring(2, 3));
    rings.push_back(truncated_polynomial_ring(3, {"t"}, 2));
    rings.push_back(cyclic_ring(2, 2));
  }
  return rings;
}

FiniteModule random_module(std::mt19937_64& rng, const std::vector<FiniteRing>& rings, int max_length) {
  const FiniteRing& R = rings[pick(rng, rings.size())];
  std::vector<std::vector<Ideal>> ideals;
  for (const auto& f : R.factors()) ideals.push_back(enumerate_ideals(f));

  std::vector<FiniteModule> parts;
  int total = 0;
  const auto summands = 1 + pick(rng, 3);
  for (std::uint64_t s = 0; s < summands; ++s) {
    std::vector<Ideal> chosen;
    for (const auto& list : ideals) chosen.push_back(list[pick(rng, list.size())]);
    FiniteModule c = cyclic_quotient(ProductIdeal(R, chosen));
    if (c.length() == 0 || total + c.length() > max_length) continue;
    total += c.length();
    parts.push_back(std::move(c));
  }
  if (parts.empty()) parts.push_back(cyclic_quotient(radical(R)));
  FiniteModule m = parts.size() == 1 ? parts.front() : direct_sum(parts);

  switch (pick(rng, 3)) {
    case 1:
      return quotient(m, span_submodule(m, Mat{random_element(rng, m.layout())})).module;
    case 2: {
      auto sub = span_submodule(m, Mat{random_element(rng, m.layout()), random_element(rng, m.layout())});
      if (sub.is_zero()) return m;
      return as_module(sub).module;
    }
    default:
      return m;
  }
}

CheckResult check_matlis_involution(const SuiteOptions&) {
  return timed(1, "Matlis involution suite", kMatlisSuiteLimit, [](Failures& f) {
    std::size_t algebras = 0, modules = 0, nodes = 0;
    for (const auto& A : corpus_algebras()) {
      ++algebras;
      for (const auto& m : corpus_modules(A)) {
        ++modules;
        const std::string where = A.describe() + " module " + std::to_string(modules);
        const DualityCertificate cert = double_dual_certificate(m);
        const FiniteModule& T = cert.dual.module;
        if (T.length() != m.length()) f.add(where + ": length of T(M) differs");
        const auto lat = enumerate_submodules(m);
        const auto tlat = enumerate_submodules(T);
        nodes += lat.size();
        if (lat.size() != tlat.size()) f.add(where + ": |Sub(M)| != |Sub(T(M))|");
        std::vector<Submodule> z;
        std::set<zp::Span> images;
        for (std::size_t i = 0; i < lat.size(); ++i) {
          z.push_back(zeta(cert.dual, lat.node(i)));
          images.insert(z.back().span());
          if (!(zeta(cert.double_dual, z.back()) == evaluate(cert, lat.node(i)))) {
            f.add(where + ": zeta(zeta(N)) != N at node " + std::to_string(i));
          }
        }
        if (images.size() != lat.size()) f.add(where + ": zeta is not injective");
        for (std::size_t i = 0; i < lat.size(); ++i)
          for (std::size_t j = 0; j < lat.size(); ++j)
            if (lat.node(j).includes(lat.node(i)) != z[i].includes(z[j])) {
              f.add(where + ": zeta is not order-reversing");
            }
      }
    }
    return std::to_string(algebras) + " algebras, " + std::to_string(modules) + " modules, " +
           std::to_string(nodes) + " submodules";
  });
}

CheckResult check_primary_decomposition(const SuiteOptions& opt) {
  return timed(2, "Primary decomposition suite", 0, [&](Failures& f) {
    std::mt19937_64 rng(opt.seed);
    const auto rings = random_rings(true);
    std::size_t components = 0;
    for (std::size_t n = 0; n < opt.random_modules; ++n) {
      const FiniteModule m = random_module(rng, rings);
      const std::string where = "module " + std::to_string(n) + " over " + m.ring().describe();
      PrimaryDecomposition pd;
      try {
        pd = primary_components(m);
      } catch (const Error& e) {
        f.add(where + ": " + e.what());
        continue;
      }
      Submodule total = zero_submodule(m);
      int length_sum = 0;
      for (const auto& c : pd.components) {
        ++components;
        if (!(c.torsion_part == c.power_part)) f.add(where + ": torsion part differs from I^n M");
        total = submodule_sum(total, c.torsion_part);
        length_sum += c.torsion_part.length();
      }
      if (!(total == full_submodule(m)) || length_sum != m.length()) f.add(where + ": components do not sum to M");
    }
    if (opt.random_modules < 200) f.add("fewer than 200 modules");
    return std::to_string(opt.random_modules) + " modules, " + std::to_string(components) + " components, seed " +
           std::to_string(opt.seed);
  });
}

CheckResult check_meager_fast_path(const SuiteOptions& opt) {
  return timed(3, "Meager iff componentwise chain", 0, [&](Failures& f) {
    std::mt19937_64 rng(opt.seed + 1);
    const auto rings = random_rings(false);
    std::size_t meager = 0;
    for (std::size_t n = 0; n < opt.random_modules; ++n) {
      const FiniteModule m = random_module(rng, rings);
      const bool scan = is_meager(m).meager;
      if (scan) ++meager;
      if (scan != meager_fast_path(m)) f.add("module " + std::to_string(n) + " over " + m.ring().describe());
    }
    if (opt.random_modules < 200) f.add("fewer than 200 modules");
    return std::to_string(opt.random_modules) + " modules, " + std::to_string(meager) + " meager, seed " +
           std::to_string(opt.seed + 1);
  });
}

CheckResult check_ideal_tree_dichotomy(const SuiteOptions&) {
  return timed(4, "Ideal-tree dichotomy", kIdealTreeLimit, [](Failures& f) {
    const Tower t = make_tower(parse_tower_spec("F_2[[t]]"));
    const IdealTree chain = ideal_tree(t, 5);
    const auto rc = branching_report(chain);
    if (chain.level_sizes() != std::vector<std::size_t>{1, 2, 3, 4, 5}) f.add("F_2[[t]] level sizes");
    if (rc.branching_per_level != std::vector<std::size_t>{1, 1, 1, 1}) f.add("F_2[[t]] branching nodes per level");
    if (chain.level_sizes() != ideal_tree_level_sizes_brute(t, 5)) f.add("F_2[[t]] differs from full scan");

    const Tower xy = make_tower(parse_tower_spec("F_2[[x,y]]"));
    const IdealTree tree = ideal_tree(xy, 4);
    const auto r = branching_report(tree);
    if (r.verdict != BranchingVerdict::EverywhereBranching || r.min_degree < 2) f.add("F_2[[x,y]] has a non-branching node");
    if (r.leaf_count < 8) f.add("F_2[[x,y]] leaf count below 2^3");
    if (tree.level_sizes() != ideal_tree_level_sizes_brute(xy, 4)) f.add("F_2[[x,y]] differs from full scan");

    std::ostringstream d;
    d << "F_2[[t]]: " << to_string(rc.verdict) << "; F_2[[x,y]]: " << to_string(r.verdict) << ", min degree "
      << r.min_degree << ", leaves " << r.leaf_count;
    return d.str();
  });
}

CheckResult check_hilbert_samuel(const SuiteOptions&) {
  return timed(5, "Hilbert-Samuel degrees", 0, [](Failures& f) {
    struct Case {
      const char* spec;
      std::size_t nvars;
      std::vector<std::vector<int>> rels;
      int depth;
      int estimate;
    };
    const std::vector<Case> cases = {{"F_2[[t]]", 1, {}, 4, 1},
                                     {"F_2[[x,y]]", 2, {}, 4, 2},
                                     {"F_2[[x,y,z]]", 3, {}, 5, 3},
                                     {kSquareEmbeddingTower, 3, {{0, 0, 3}, {0, 1, 2}, {0, 2, 1}}, 6, 2}};
    std::string detail;
    for (const auto& c : cases) {
      const auto hs = hilbert_samuel_profile(make_tower(parse_tower_spec(c.spec)), c.depth);
      for (int d = 1; d <= c.depth; ++d) {
        if (static_cast<std::size_t>(hs.lengths[d - 1]) != oracle::count_monomials(c.nvars, d, c.rels)) {
          f.add(std::string(c.spec) + ": length at level " + std::to_string(d));
        }
      }
      if (hs.krull_estimate != c.estimate) f.add(std::string(c.spec) + ": estimate " + std::to_string(hs.krull_estimate));
      detail += (detail.empty() ? "" : ", ") + std::to_string(hs.krull_estimate);
    }
    const auto two = hilbert_samuel_profile(make_tower(parse_tower_spec("F_2[[x,y]]")), 4).lengths;
    if (two != std::vector<int>{1, 3, 6, 10}) f.add("two-variable lengths are not 1,3,6,10");
    return "estimates " + detail;
  });
}

CheckResult check_pair_growth(const SuiteOptions&) {
  return timed(6, "Pair-growth witnesses", 0, [](Failures& f) {
    const Tower z2 = make_tower(parse_tower_spec("Z_2"));
    const auto growth = pair_growth(z2, 6);
    std::string detail = "totals";
    for (int k = 1; k <= 6; ++k) {
      const std::size_t two_k = std::size_t{1} << k;
      if (growth[k - 1] != two_k) f.add("k=" + std::to_string(k) + ": " + std::to_string(growth[k - 1]) + " pairs");
      const FiniteModule reg = regular_module(FiniteRing(z2.level(k)));
      const std::size_t total = enumerate_submodules(direct_sum({reg, reg})).size();
      if (k <= 4) {
        oracle::Group G({oracle::Int{1} << k, oracle::Int{1} << k});
        if (G.all_subgroups().size() != total) f.add("k=" + std::to_string(k) + ": enumeration disagrees with brute force");
      }
      const std::size_t chain = enumerate_submodules(reg).size();
      if (chain != static_cast<std::size_t>(k + 1)) f.add("Z/2^k is not a chain of k+1");
      if (!(total > two_k && total > chain)) f.add("k=" + std::to_string(k) + ": total " + std::to_string(total));
      detail += " " + std::to_string(total);
    }
    return detail;
  });
}

CheckResult check_countability(const SuiteOptions&) {
  return timed(7, "Countability decisions over Z", 0, [](Failures& f) {
    std::size_t crosschecks = 0;
    for (const char* s : {"Prufer(2)", "Z", "Z/2 + Prufer(3)"}) {
      if (count_submodules(parse_descriptor(s)) != SymbolicCardinal::aleph0()) f.add(std::string(s) + " is not Aleph0");
    }
    for (const char* s : {"Prufer(2)^2", "Z[1/2] + Prufer(2)", "Q", "inf*Z/2"}) {
      const auto d = parse_descriptor(s);
      if (count_submodules(d) != SymbolicCardinal::continuum()) f.add(std::string(s) + " is not Continuum");
      const auto r = truncation_crosscheck(d, 2, 4);
      ++crosschecks;
      if (r.claim != CrosscheckReport::Claim::Exponential || !r.consistent) {
        f.add(std::string(s) + ": level-4 count " + std::to_string(r.count));
      }
    }
    return "7 verdicts, " + std::to_string(crosschecks) + " growth crosschecks at k=4";
  });
}

CheckResult check_continuity_audit(const SuiteOptions&) {
  return timed(8, "Continuity audit", 0, [](Failures& f) {
    std::string detail;
    for (const auto& R : {cyclic_ring(2, 4), truncated_polynomial_ring(2, {"x", "y"}, 3)}) {
      const auto rep = continuity_audit(regular_module(R));
      if (!rep.violations.empty()) f.add(R.describe() + ": " + std::to_string(rep.violations.size()) + " violations");
      detail += (detail.empty() ? "" : ", ") + R.describe() + " " + std::to_string(rep.pairs) + " pairs";
    }
    return detail;
  });
}

CheckResult check_square_embedding(const SuiteOptions&) {
  return timed(9, "Square embedding at depth 4", 0, [](Failures& f) {
    const auto rep =
        square_embedding_check(make_tower(parse_tower_spec(kSquareEmbeddingTower)), 4, {"T*Y", "T^2"}, {"Y", "T", "X^2"});
    if (!rep.well_defined) f.add("not well defined");
    if (!rep.linear) f.add("not linear");
    if (!rep.sends_units_to_generators) f.add("generators not hit");
    if (!rep.injective) f.add("not injective");
    if (!rep.onto_ideal) f.add("image is not the ideal (TY, T^2)");
    return "domain length " + std::to_string(rep.domain_length) + ", ideal length " + std::to_string(rep.ideal_length);
  });
}

CheckResult check_oracle_equivalence(const SuiteOptions&) {
  return timed(10, "Oracle equivalence", kOracleSuiteLimit, [](Failures& f) {
    std::size_t modules = 0, algebras = 0;
    for (const auto& A : corpus_algebras()) {
      for (const auto& m : corpus_modules(A)) {
        if (m.layout().cardinality(64) == 0) continue;
        ++modules;
        if (!same_subgroups(m.layout(), enumerate_submodules(m).spans(), m.actions())) {
          f.add(A.describe() + ": submodule lattice of module " + std::to_string(modules));
        }
      }
    }
    std::vector<LocalAlgebra> small;
    for (const auto& A : corpus_algebras())
      if (A.p() == 2 && A.exponent() == 1 && A.dim() <= 5) small.push_back(A);
    for (auto& A : extra_f2_algebras()) small.push_back(std::move(A));
    for (const auto& A : small) {
      ++algebras;
      std::vector<zp::Span> spans;
      for (const auto& I : enumerate_ideals(A)) spans.push_back(I.span());
      if (!same_subgroups(A.layout(), spans, A.multiplication_matrices())) f.add(A.describe() + ": ideals");
    }
    return std::to_string(modules) + " modules, " + std::to_string(algebras) + " algebras";
  });
}

std::vector<CheckResult> run_acceptance(const SuiteOptions& opt) {
  using Fn = CheckResult (*)(const SuiteOptions&);
  const std::vector<Fn> checks = {check_matlis_involution,  check_primary_decomposition, check_meager_fast_path,
                                  check_ideal_tree_dichotomy, check_hilbert_samuel,      check_pair_growth,
                                  check_countability,        check_continuity_audit,     check_square_embedding,
                                  check_oracle_equivalence};
  std::vector<CheckResult> out;
  if (!opt.parallel) {
    for (Fn c : checks) out.push_back(c(opt));
    return out;
  }
  std::vector<std::future<CheckResult>> futures;
  for (Fn c : checks) futures.push_back(std::async(std::launch::async, c, std::cref(opt)));
  for (auto& fu : futures) out.push_back(fu.get());
  return out;
}

}  // namespace modlat::suite
