#include "modlat/module.hpp"

#include <algorithm>
#include <sstream>

#include "modlat/error.hpp"

namespace modlat {

namespace {

std::string pair_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Mat zero_mat(std::size_t r, std::size_t c) { return Mat(r, Vec(c, 0)); }

Mat unit_rows(std::size_t n) {
  Mat I = zero_mat(n, n);
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

// Product of two endomorphism matrices of the same group, reduced by the
// column orders.
Mat compose(const zp::Layout& L, const Mat& A, const Mat& B) {
  Mat out;
  out.reserve(A.size());
  for (const auto& row : A) out.push_back(L.apply(row, B));
  return out;
}

Mat reduce_rows(const zp::Layout& L, Mat A) {
  for (auto& row : A) row = L.reduce(std::move(row));
  return A;
}

zp::Layout concat(const std::vector<zp::Layout>& parts) {
  std::vector<zp::Cyclic> gens;
  for (const auto& p : parts) gens.insert(gens.end(), p.gens().begin(), p.gens().end());
  return zp::Layout(std::move(gens));
}

}  // namespace

// ---------------------------------------------------------------- FiniteRing

FiniteRing::FiniteRing(std::vector<LocalAlgebra> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::InvalidArgument, "a ring needs at least one factor");
  offsets_.push_back(0);
  std::vector<zp::Layout> parts;
  for (const auto& f : factors_) {
    offsets_.push_back(offsets_.back() + f.dim());
    parts.push_back(f.layout());
  }
  layout_ = concat(parts);
}

Vec FiniteRing::embed(std::size_t f, const Vec& local) const {
  Vec out(dim(), 0);
  for (std::size_t i = 0; i < local.size(); ++i) out[offsets_[f] + i] = local[i];
  return out;
}

Vec FiniteRing::restrict_to(std::size_t f, const Vec& global) const {
  return Vec(global.begin() + static_cast<std::ptrdiff_t>(offsets_[f]),
             global.begin() + static_cast<std::ptrdiff_t>(offsets_[f + 1]));
}

Vec FiniteRing::one() const {
  Vec out(dim(), 0);
  for (std::size_t f = 0; f < factors_.size(); ++f) out[offsets_[f]] = 1;
  return out;
}

std::string FiniteRing::describe() const {
  std::string out;
  for (std::size_t f = 0; f < factors_.size(); ++f) out += (f ? " x " : "") + factors_[f].describe();
  return out;
}

FiniteRing zmod_ring(Int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Z/n needs n >= 2");
  std::vector<LocalAlgebra> factors;
  for (Int p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) factors.push_back(cyclic_ring(p, k));
  }
  if (n > 1) factors.push_back(cyclic_ring(n, 1));
  return FiniteRing(std::move(factors));
}

// -------------------------------------------------------------- ProductIdeal

ProductIdeal::ProductIdeal(FiniteRing ring, std::vector<Ideal> parts)
    : ring_(std::move(ring)), parts_(std::move(parts)) {
  if (parts_.size() != ring_.factor_count()) {
    throw Error(ErrorCode::MixedParents, "ideal parts do not match the ring's factors");
  }
  for (std::size_t f = 0; f < parts_.size(); ++f) {
    if (!(parts_[f].ring() == ring_.factor(f))) {
      throw Error(ErrorCode::MixedParents, "ideal part belongs to a different algebra");
    }
  }
}

int ProductIdeal::length() const noexcept {
  int l = 0;
  for (const auto& p : parts_) l += p.length();
  return l;
}

Mat ProductIdeal::generators() const {
  Mat out;
  for (std::size_t f = 0; f < parts_.size(); ++f)
    for (const auto& g : parts_[f].generators()) out.push_back(ring_.embed(f, g));
  return out;
}

ProductIdeal product_unit_ideal(const FiniteRing& ring) {
  std::vector<Ideal> parts;
  for (const auto& f : ring.factors()) parts.push_back(unit_ideal(f));
  return ProductIdeal(ring, std::move(parts));
}

ProductIdeal product_zero_ideal(const FiniteRing& ring) {
  std::vector<Ideal> parts;
  for (const auto& f : ring.factors()) parts.push_back(zero_ideal(f));
  return ProductIdeal(ring, std::move(parts));
}

ProductIdeal factor_maximal_ideal(const FiniteRing& ring, std::size_t f) {
  std::vector<Ideal> parts;
  for (std::size_t g = 0; g < ring.factor_count(); ++g) {
    parts.push_back(g == f ? maximal_ideal(ring.factor(g)) : unit_ideal(ring.factor(g)));
  }
  return ProductIdeal(ring, std::move(parts));
}

ProductIdeal radical(const FiniteRing& ring) {
  std::vector<Ideal> parts;
  for (const auto& f : ring.factors()) parts.push_back(maximal_ideal(f));
  return ProductIdeal(ring, std::move(parts));
}

ProductIdeal product_ideal_span(const FiniteRing& ring, const Mat& global_gens) {
  std::vector<Ideal> parts;
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    Mat local;
    for (const auto& g : global_gens) local.push_back(ring.restrict_to(f, g));
    parts.push_back(ideal_span(ring.factor(f), local));
  }
  return ProductIdeal(ring, std::move(parts));
}

ProductIdeal product_combine(IdealOp op, const ProductIdeal& a, const ProductIdeal& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorCode::MixedParents, "ideals of different rings");
  std::vector<Ideal> parts;
  for (std::size_t f = 0; f < a.parts().size(); ++f) parts.push_back(ideal_combine(op, a.part(f), b.part(f)));
  return ProductIdeal(a.ring(), std::move(parts));
}

ProductIdeal product_power(const ProductIdeal& a, int n) {
  std::vector<Ideal> parts;
  for (const auto& p : a.parts()) parts.push_back(ideal_power(p, n));
  return ProductIdeal(a.ring(), std::move(parts));
}

// -------------------------------------------------------------- FiniteModule

struct FiniteModule::Impl {
  FiniteRing ring;
  zp::Layout layout;
  std::vector<Mat> actions;
};

FiniteModule::FiniteModule(FiniteRing ring, zp::Layout layout, std::vector<Mat> actions) {
  const std::size_t n = layout.size();
  if (actions.size() != ring.dim()) {
    throw Error(ErrorCode::ActionNotRepresentation,
                "expected " + std::to_string(ring.dim()) + " action matrices, got " +
                    std::to_string(actions.size()));
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    auto& A = actions[i];
    if (A.size() != n || std::any_of(A.begin(), A.end(), [n](const Vec& r) { return r.size() != n; })) {
      throw Error(ErrorCode::ActionNotRepresentation, "action matrix " + std::to_string(i) + " has wrong shape");
    }
    A = reduce_rows(layout, std::move(A));
    for (std::size_t j = 0; j < n; ++j) {
      const Vec killed = layout.scale(A[j], layout.order_of(j));
      if (!layout.is_zero(killed)) {
        throw Error(ErrorCode::ActionNotRepresentation,
                    "action " + std::to_string(i) + " is not additive on generator " + std::to_string(j));
      }
    }
  }

  Mat sum_idem = zero_mat(n, n);
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& A = actions[ring.global_index(f, 0)];
    for (std::size_t j = 0; j < n; ++j) sum_idem[j] = layout.add(sum_idem[j], A[j]);
  }
  if (sum_idem != reduce_rows(layout, unit_rows(n))) {
    throw Error(ErrorCode::ActionNotRepresentation, "the unit does not act as the identity");
  }

  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& R = ring.factor(f);
    for (std::size_t i = 0; i < R.dim(); ++i) {
      const auto& A = actions[ring.global_index(f, i)];
      for (const auto& row : A) {
        if (!layout.is_zero(layout.scale(row, R.modulus()))) {
          throw Error(ErrorCode::ActionNotRepresentation,
                      "characteristic of factor " + std::to_string(f) + " does not kill basis " +
                          std::to_string(ring.global_index(f, i)));
        }
      }
    }
  }

  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    for (std::size_t g = 0; g < ring.factor_count(); ++g) {
      const auto& R = ring.factor(f);
      const auto& S = ring.factor(g);
      for (std::size_t i = 0; i < R.dim(); ++i) {
        for (std::size_t j = 0; j < S.dim(); ++j) {
          const std::size_t gi = ring.global_index(f, i), gj = ring.global_index(g, j);
          const Mat lhs = compose(layout, actions[gi], actions[gj]);
          Mat rhs = zero_mat(n, n);
          if (f == g) {
            const Vec& c = R.basis_product(i, j);
            for (std::size_t k = 0; k < R.dim(); ++k) {
              if (c[k] == 0) continue;
              const auto& Ak = actions[ring.global_index(f, k)];
              for (std::size_t r = 0; r < n; ++r) rhs[r] = layout.add(rhs[r], layout.scale(Ak[r], c[k]));
            }
          }
          if (lhs != rhs) {
            throw Error(ErrorCode::ActionNotRepresentation,
                        "action does not respect the product of basis pair " + pair_str(gi, gj));
          }
        }
      }
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->ring = std::move(ring);
  impl->layout = std::move(layout);
  impl->actions = std::move(actions);
  impl_ = std::move(impl);
}

const FiniteRing& FiniteModule::ring() const noexcept { return impl_->ring; }
const zp::Layout& FiniteModule::layout() const noexcept { return impl_->layout; }
const std::vector<Mat>& FiniteModule::actions() const noexcept { return impl_->actions; }

Mat FiniteModule::action_of(const Vec& r) const {
  const auto& L = layout();
  Mat out = zero_mat(L.size(), L.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    const auto& A = actions()[i];
    for (std::size_t j = 0; j < L.size(); ++j) out[j] = L.add(out[j], L.scale(A[j], r[i]));
  }
  return out;
}

Vec FiniteModule::act(const Vec& r, const Vec& x) const { return layout().apply(x, action_of(r)); }

std::string FiniteModule::describe() const {
  std::ostringstream os;
  os << "module of length " << length() << " over " << ring().describe() << " [";
  for (std::size_t j = 0; j < dim(); ++j) os << (j ? " + " : "") << "Z/" << layout().order_of(j);
  os << "]";
  return os.str();
}

FiniteModule make_module(const FiniteRing& ring, const zp::Layout& layout, std::vector<Mat> actions) {
  return FiniteModule(ring, layout, std::move(actions));
}

FiniteModule regular_module(const FiniteRing& ring) {
  const std::size_t n = ring.dim();
  std::vector<Mat> actions;
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& R = ring.factor(f);
    for (std::size_t i = 0; i < R.dim(); ++i) {
      Mat A = zero_mat(n, n);
      const auto& local = R.multiplication_matrices()[i];
      for (std::size_t j = 0; j < R.dim(); ++j) A[ring.offset(f) + j] = ring.embed(f, local[j]);
      actions.push_back(std::move(A));
    }
  }
  return FiniteModule(ring, ring.layout(), std::move(actions));
}

FiniteModule zero_module(const FiniteRing& ring) {
  return FiniteModule(ring, zp::Layout{}, std::vector<Mat>(ring.dim()));
}

FiniteModule direct_sum(const std::vector<FiniteModule>& summands) {
  if (summands.empty()) throw Error(ErrorCode::InvalidArgument, "direct sum of no modules");
  const FiniteRing& ring = summands.front().ring();
  std::vector<zp::Layout> parts;
  for (const auto& s : summands) {
    if (!(s.ring() == ring)) throw Error(ErrorCode::MixedParents, "summands over different rings");
    parts.push_back(s.layout());
  }
  zp::Layout L = concat(parts);
  std::vector<Mat> actions(ring.dim(), zero_mat(L.size(), L.size()));
  std::size_t off = 0;
  for (const auto& s : summands) {
    for (std::size_t i = 0; i < ring.dim(); ++i) {
      const auto& A = s.actions()[i];
      for (std::size_t j = 0; j < s.dim(); ++j)
        for (std::size_t l = 0; l < s.dim(); ++l) actions[i][off + j][off + l] = A[j][l];
    }
    off += s.dim();
  }
  return FiniteModule(ring, std::move(L), std::move(actions));
}

FiniteModule cyclic_quotient(const ProductIdeal& ideal) {
  const FiniteModule R = regular_module(ideal.ring());
  return quotient(R, span_submodule(R, ideal.generators())).module;
}

// ----------------------------------------------------------------- Submodule

Mat Submodule::generators() const { return zp::generators(module_.layout(), span_); }

bool Submodule::contains(const Vec& x) const { return zp::contains(module_.layout(), span_, x); }

bool Submodule::includes(const Submodule& other) const {
  return zp::includes(module_.layout(), span_, other.span_);
}

Submodule span_submodule(const FiniteModule& m, const Mat& gens) {
  const auto& L = m.layout();
  return Submodule(m, zp::close(L, zp::span(L, gens), m.actions()));
}

Submodule zero_submodule(const FiniteModule& m) { return Submodule(m, zp::zero_span(m.layout())); }

Submodule full_submodule(const FiniteModule& m) { return Submodule(m, zp::full_span(m.layout())); }

Submodule submodule_sum(const Submodule& a, const Submodule& b) {
  if (!(a.module() == b.module())) throw Error(ErrorCode::MixedParents, "submodules of different modules");
  return Submodule(a.module(), zp::sum(a.module().layout(), a.span(), b.span()));
}

Submodule submodule_intersection(const Submodule& a, const Submodule& b) {
  if (!(a.module() == b.module())) throw Error(ErrorCode::MixedParents, "submodules of different modules");
  return Submodule(a.module(), zp::intersect(a.module().layout(), a.span(), b.span()));
}

Submodule checked_submodule(const FiniteModule& m, const zp::Span& s) {
  if (!(zp::close(m.layout(), s, m.actions()) == s)) {
    throw Error(ErrorCode::NotSubmodule, "subgroup is not stable under the ring action");
  }
  return Submodule(m, s);
}

QuotientModule quotient(const FiniteModule& m, const Submodule& n) {
  if (!(n.module() == m)) throw Error(ErrorCode::NotSubmodule, "submodule belongs to another module");
  const auto& L = m.layout();
  zp::QuotientData q = zp::quotient(L, n.span());
  std::vector<Mat> actions;
  for (const auto& A : m.actions()) {
    Mat B;
    for (const auto& row : q.lift) B.push_back(q.layout.image(L.apply(row, A), q.projection));
    actions.push_back(std::move(B));
  }
  return {FiniteModule(m.ring(), q.layout, std::move(actions)), std::move(q.projection), std::move(q.lift)};
}

EmbeddedModule as_module(const Submodule& n) {
  const FiniteModule& m = n.module();
  const auto& L = m.layout();
  zp::SubgroupBasis b = zp::basis_of(L, n.span());
  std::vector<Mat> actions;
  for (const auto& A : m.actions()) {
    Mat B;
    for (const auto& e : b.elements) B.push_back(zp::coordinates(L, b, L.apply(e, A)));
    actions.push_back(std::move(B));
  }
  Mat inclusion = b.elements;
  return {FiniteModule(m.ring(), b.layout, std::move(actions)), std::move(inclusion)};
}

// ---------------------------------------------------------------------- Hom

namespace {

struct HomSystem {
  zp::Layout unknowns;
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  std::vector<Int> scale;
  zp::Span kernel;
};

// Unknown (j, l) stands for the entry F[j][l] = c * scale, c mod p^min(e_j, f_l):
// exactly the values compatible with the orders of g_j and h_l.
HomSystem solve_hom(const FiniteModule& m, const FiniteModule& n) {
  if (!(m.ring() == n.ring())) throw Error(ErrorCode::MixedParents, "modules over different rings");
  const auto& LM = m.layout();
  const auto& LN = n.layout();
  HomSystem sys;
  std::vector<zp::Cyclic> ugens;
  for (std::size_t j = 0; j < LM.size(); ++j) {
    for (std::size_t l = 0; l < LN.size(); ++l) {
      if (LM[j].p != LN[l].p) continue;
      sys.entries.emplace_back(j, l);
      sys.scale.push_back(zp::power(LM[j].p, std::max(0, LN[l].e - LM[j].e)));
      ugens.push_back({LM[j].p, std::min(LM[j].e, LN[l].e)});
    }
  }
  sys.unknowns = zp::Layout(ugens);
  const std::size_t U = sys.entries.size();
  std::vector<std::size_t> pos(LM.size() * LN.size(), static_cast<std::size_t>(-1));
  for (std::size_t u = 0; u < U; ++u) pos[sys.entries[u].first * LN.size() + sys.entries[u].second] = u;

  const std::size_t nb = m.actions().size();
  std::vector<zp::Cyclic> tgens;
  for (std::size_t i = 0; i < nb; ++i)
    for (const auto& [j, l] : sys.entries) tgens.push_back(LN[l]);
  zp::Layout target(std::move(tgens));

  Mat images(U, Vec(U * nb, 0));
  for (std::size_t u = 0; u < U; ++u) {
    const auto [j, l] = sys.entries[u];
    const Int s = sys.scale[u];
    for (std::size_t i = 0; i < nb; ++i) {
      const auto& AM = m.actions()[i];
      const auto& AN = n.actions()[i];
      Vec& img = images[u];
      const std::size_t base = i * U;
      // (A^M E)[j'][l] = A^M[j'][j] * s
      for (std::size_t jp = 0; jp < LM.size(); ++jp) {
        if (AM[jp][j] == 0) continue;
        const std::size_t v = pos[jp * LN.size() + l];
        if (v == static_cast<std::size_t>(-1)) continue;
        img[base + v] += zp::mul_mod(AM[jp][j], s, LN.order_of(l));
      }
      // (E A^N)[j][l'] = s * A^N[l][l']
      for (std::size_t lp = 0; lp < LN.size(); ++lp) {
        if (AN[l][lp] == 0) continue;
        const std::size_t v = pos[j * LN.size() + lp];
        if (v == static_cast<std::size_t>(-1)) continue;
        img[base + v] -= zp::mul_mod(s, AN[l][lp], LN.order_of(lp));
      }
    }
    images[u] = target.reduce(std::move(images[u]));
  }
  sys.kernel = zp::kernel(sys.unknowns, unit_rows(U), target, images);
  return sys;
}

Mat to_matrix(const HomSystem& sys, const zp::Layout& LM, const zp::Layout& LN, const Vec& c) {
  Mat F = zero_mat(LM.size(), LN.size());
  for (std::size_t u = 0; u < sys.entries.size(); ++u) {
    const auto [j, l] = sys.entries[u];
    F[j][l] = zp::mul_mod(c[u], sys.scale[u], LN.order_of(l));
  }
  return F;
}

Vec from_matrix(const std::vector<std::pair<std::size_t, std::size_t>>& entries,
                const std::vector<Int>& scale, const zp::Layout& unknowns, const zp::Layout& LN,
                const Mat& F) {
  Vec c(entries.size(), 0);
  for (std::size_t u = 0; u < entries.size(); ++u) {
    const auto [j, l] = entries[u];
    const Int v = zp::mod(F[j][l], LN.order_of(l));
    if (v % scale[u] != 0) throw Error(ErrorCode::InvalidArgument, "matrix is not a group homomorphism");
    c[u] = v / scale[u];
  }
  return unknowns.reduce(std::move(c));
}

}  // namespace

HomModule hom_module(const FiniteModule& m, const FiniteModule& n) {
  HomSystem sys = solve_hom(m, n);
  const auto& LM = m.layout();
  const auto& LN = n.layout();
  zp::SubgroupBasis basis = zp::basis_of(sys.unknowns, sys.kernel);
  std::vector<Mat> maps;
  for (const auto& e : basis.elements) maps.push_back(to_matrix(sys, LM, LN, e));

  std::vector<Mat> actions;
  for (const auto& A : m.actions()) {
    Mat B;
    for (const auto& F : maps) {
      // (b f)(x) = f(b x): x -> (x A) F
      Mat G;
      for (const auto& row : A) G.push_back(LN.image(row, F));
      B.push_back(zp::coordinates(sys.unknowns, basis,
                                  from_matrix(sys.entries, sys.scale, sys.unknowns, LN, G)));
    }
    actions.push_back(std::move(B));
  }
  HomModule out{FiniteModule(m.ring(), basis.layout, std::move(actions)), std::move(maps), LN,
                std::move(sys.unknowns), std::move(basis), std::move(sys.entries), std::move(sys.scale)};
  return out;
}

Vec hom_coordinates(const HomModule& hom, const Mat& f) {
  return zp::coordinates(hom.unknowns, hom.basis,
                         from_matrix(hom.entries, hom.entry_scale, hom.unknowns, hom.codomain, f));
}

int hom_length(const FiniteModule& m, const FiniteModule& n) { return solve_hom(m, n).kernel.length(); }

MapCheck check_module_map(const FiniteModule& m, const FiniteModule& n, const Mat& w) {
  const auto& LM = m.layout();
  const auto& LN = n.layout();
  MapCheck out;
  if (w.size() != LM.size()) return out;
  Mat W;
  for (const auto& row : w) W.push_back(LN.reduce(row));
  out.well_defined = true;
  for (std::size_t j = 0; j < LM.size(); ++j)
    if (!LN.is_zero(LN.scale(W[j], LM.order_of(j)))) out.well_defined = false;
  if (!out.well_defined) return out;
  out.linear = m.ring() == n.ring();
  for (std::size_t i = 0; i < m.actions().size() && out.linear; ++i) {
    for (std::size_t j = 0; j < LM.size() && out.linear; ++j) {
      const Vec lhs = LN.image(m.actions()[i][j], W);
      const Vec rhs = LN.apply(W[j], n.actions()[i]);
      out.linear = lhs == rhs;
    }
  }
  out.injective = zp::kernel(LM, unit_rows(LM.size()), LN, W).length() == 0;
  out.image = zp::span(LN, W);
  return out;
}

// ------------------------------------------------------- socle and friends

Submodule torsion(const FiniteModule& m, const ProductIdeal& ideal) {
  const auto& L = m.layout();
  const Mat gens = ideal.generators();
  if (gens.empty()) return full_submodule(m);
  std::vector<Mat> mats;
  for (const auto& g : gens) mats.push_back(m.action_of(g));
  std::vector<zp::Cyclic> tg;
  for (std::size_t k = 0; k < mats.size(); ++k) tg.insert(tg.end(), L.gens().begin(), L.gens().end());
  Mat images;
  for (std::size_t j = 0; j < L.size(); ++j) {
    Vec img;
    for (const auto& A : mats) img.insert(img.end(), A[j].begin(), A[j].end());
    images.push_back(std::move(img));
  }
  return Submodule(m, zp::kernel(L, unit_rows(L.size()), zp::Layout(std::move(tg)), images));
}

Submodule ideal_times(const ProductIdeal& ideal, const Submodule& n) {
  const FiniteModule& m = n.module();
  const auto& L = m.layout();
  Mat prods;
  const Mat ng = n.generators();
  for (const auto& g : ideal.generators()) {
    const Mat A = m.action_of(g);
    for (const auto& x : ng) prods.push_back(L.apply(x, A));
  }
  return Submodule(m, zp::span(L, prods));
}

Submodule socle(const FiniteModule& m, std::optional<std::size_t> factor) {
  if (factor) return torsion(m, factor_maximal_ideal(m.ring(), *factor));
  return torsion(m, radical(m.ring()));
}

int length(const FiniteModule& m) { return m.length(); }

ProductIdeal annihilator(const FiniteModule& m) {
  const FiniteRing& ring = m.ring();
  const auto& L = m.layout();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<zp::Cyclic> tg;
  for (std::size_t j = 0; j < L.size(); ++j)
    for (std::size_t l = 0; l < L.size(); ++l)
      if (L[j].p == L[l].p) {
        pairs.emplace_back(j, l);
        tg.push_back(L[l]);
      }
  const zp::Layout target(std::move(tg));
  std::vector<Ideal> parts;
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& R = ring.factor(f);
    Mat images;
    for (std::size_t i = 0; i < R.dim(); ++i) {
      const auto& A = m.actions()[ring.global_index(f, i)];
      Vec img;
      for (const auto& [j, l] : pairs) img.push_back(A[j][l]);
      images.push_back(std::move(img));
    }
    parts.emplace_back(R, zp::kernel(R.layout(), unit_rows(R.dim()), target, images));
  }
  return ProductIdeal(ring, std::move(parts));
}

std::vector<std::size_t> associated_primes(const FiniteModule& m) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < m.ring().factor_count(); ++f)
    if (!socle(m, f).is_zero()) out.push_back(f);
  return out;
}

PrimaryDecomposition primary_components(const FiniteModule& m) {
  const FiniteRing& ring = m.ring();
  const auto asso = associated_primes(m);
  PrimaryDecomposition out;
  if (asso.empty()) {
    if (m.length() != 0) throw Error(ErrorCode::DecompositionMismatch, "nonzero module without associated primes");
    return out;
  }
  ProductIdeal I = product_unit_ideal(ring);
  for (std::size_t f : asso) I = product_combine(IdealOp::Product, I, factor_maximal_ideal(ring, f));
  const Submodule whole = full_submodule(m);
  int n = 0;
  while (!ideal_times(product_power(I, n), whole).is_zero()) {
    if (++n > m.length() + 1) throw Error(ErrorCode::DecompositionMismatch, "I^n M never vanishes");
  }
  out.exponent = n;

  Submodule total = zero_submodule(m);
  int total_length = 0;
  for (std::size_t f : asso) {
    ProductIdeal others = product_unit_ideal(ring);
    for (std::size_t g : asso)
      if (g != f) others = product_combine(IdealOp::Product, others, factor_maximal_ideal(ring, g));
    Submodule tor = torsion(m, product_power(factor_maximal_ideal(ring, f), n));
    Submodule pw = ideal_times(product_power(others, n), whole);
    if (!(tor == pw)) {
      throw Error(ErrorCode::DecompositionMismatch,
                  "torsion and power descriptions differ at factor " + std::to_string(f));
    }
    const auto sub_asso = associated_primes(as_module(tor).module);
    if (sub_asso != std::vector<std::size_t>{f}) {
      throw Error(ErrorCode::DecompositionMismatch,
                  "component at factor " + std::to_string(f) + " has other associated primes");
    }
    total = submodule_sum(total, tor);
    total_length += tor.length();
    out.components.push_back({f, tor, pw});
  }
  if (total_length != m.length() || !(total == whole)) {
    throw Error(ErrorCode::DecompositionMismatch, "components do not add up to the module");
  }
  return out;
}

// ------------------------------------------------------------------ lattice

SubmoduleLattice::SubmoduleLattice(FiniteModule module, zp::LatticeData data)
    : module_(std::move(module)), nodes_(std::move(data.nodes)), covers_(std::move(data.covers)) {}

std::vector<std::size_t> SubmoduleLattice::counts_by_length() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(module_.length()) + 1, 0);
  for (const auto& s : nodes_) ++counts[static_cast<std::size_t>(s.length())];
  return counts;
}

std::optional<std::size_t> SubmoduleLattice::index_of(const zp::Span& s) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s);
  if (it == nodes_.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

SubmoduleLattice enumerate_submodules(const FiniteModule& m, std::size_t limit, std::size_t element_budget) {
  return SubmoduleLattice(m, zp::enumerate_invariant(m.layout(), m.actions(), limit, element_budget));
}

}  // namespace modlat
