#include "modlat/matlis.hpp"

#include <cmath>

#include "modlat/error.hpp"

namespace modlat {

FiniteModule injective_hull(const FiniteRing& ring) {
  const std::size_t n = ring.dim();
  std::vector<Mat> actions;
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& R = ring.factor(f);
    const std::size_t o = ring.offset(f);
    for (std::size_t i = 0; i < R.dim(); ++i) {
      // b_i . phi_k = sum_j c_ij[k] phi_j
      Mat A(n, Vec(n, 0));
      for (std::size_t k = 0; k < R.dim(); ++k)
        for (std::size_t j = 0; j < R.dim(); ++j) A[o + k][o + j] = R.basis_product(i, j)[k];
      actions.push_back(std::move(A));
    }
  }
  return FiniteModule(ring, ring.layout(), std::move(actions));
}

HomModule matlis_dual(const FiniteModule& m) { return hom_module(m, injective_hull(m.ring())); }

DualityCertificate double_dual_certificate(const FiniteModule& m) {
  HomModule t = matlis_dual(m);
  HomModule tt = matlis_dual(t.module);
  Mat w;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    Mat ev;
    for (const auto& F : t.maps) ev.push_back(F[j]);
    w.push_back(hom_coordinates(tt, ev));
  }
  const MapCheck chk = check_module_map(m, tt.module, w);
  if (!chk.well_defined || !chk.linear || !chk.injective || tt.module.length() != m.length()) {
    throw Error(ErrorCode::NotBijective, "evaluation map into the double dual is not an isomorphism");
  }
  return {m, std::move(t), std::move(tt), std::move(w)};
}

Submodule zeta(const HomModule& dual, const Submodule& n) {
  const FiniteModule& t = dual.module;
  const Mat gens = n.generators();
  if (gens.empty()) return full_submodule(t);
  const auto& LE = dual.codomain;
  std::vector<zp::Cyclic> tg;
  for (std::size_t k = 0; k < gens.size(); ++k) tg.insert(tg.end(), LE.gens().begin(), LE.gens().end());
  Mat images;
  Mat units(t.dim(), Vec(t.dim(), 0));
  for (std::size_t s = 0; s < t.dim(); ++s) {
    units[s][s] = 1;
    Vec img;
    for (const auto& x : gens) {
      const Vec y = LE.image(x, dual.maps[s]);
      img.insert(img.end(), y.begin(), y.end());
    }
    images.push_back(std::move(img));
  }
  return Submodule(t, zp::kernel(t.layout(), units, zp::Layout(std::move(tg)), images));
}

Submodule evaluate(const DualityCertificate& cert, const Submodule& n) {
  const auto& L = cert.double_dual.module.layout();
  Mat imgs;
  for (const auto& x : n.generators()) imgs.push_back(L.image(x, cert.witness));
  return Submodule(cert.double_dual.module, zp::span(L, imgs));
}

Submodule radical_power(const FiniteModule& m, int n) {
  return ideal_times(product_power(radical(m.ring()), n), full_submodule(m));
}

std::optional<int> distance_exponent(const Submodule& a, const Submodule& b) {
  if (a == b) return std::nullopt;
  const FiniteModule& m = a.module();
  int s = 0;
  for (int n = 1;; ++n) {
    const Submodule jn = radical_power(m, n);
    if (!submodule_sum(b, jn).includes(a) || !submodule_sum(a, jn).includes(b)) return s;
    s = n;
    if (jn.is_zero()) return s;  // unreachable for a != b
  }
}

double submodule_distance(const Submodule& a, const Submodule& b) {
  const auto s = distance_exponent(a, b);
  return s ? std::exp(-static_cast<double>(*s)) : 0.0;
}

AuditReport continuity_audit(const FiniteModule& m, std::size_t limit, std::size_t element_budget) {
  const SubmoduleLattice lat = enumerate_submodules(m, limit, element_budget);
  const HomModule t = matlis_dual(m);
  AuditReport rep;
  rep.submodules = lat.size();

  std::vector<Submodule> jn;  // J^n M, n = 0..loewy
  for (int n = 0;; ++n) {
    jn.push_back(radical_power(m, n));
    if (jn.back().is_zero()) break;
  }
  rep.max_n = static_cast<int>(jn.size()) - 1;
  std::vector<Submodule> layers;  // zeta(J^n M) = T(M)[J^n]
  for (const auto& s : jn) layers.push_back(zeta(t, s));
  std::vector<Submodule> zs;
  for (std::size_t i = 0; i < lat.size(); ++i) zs.push_back(zeta(t, lat.node(i)));

  // exponent of each pair via the filtration, computed once per pair
  for (std::size_t i = 0; i < lat.size(); ++i) {
    for (std::size_t j = i + 1; j < lat.size(); ++j) {
      ++rep.pairs;
      const Submodule a = lat.node(i), b = lat.node(j);
      int s = 0;
      for (int n = 1; n <= rep.max_n; ++n) {
        const auto& J = jn[static_cast<std::size_t>(n)];
        if (!submodule_sum(b, J).includes(a) || !submodule_sum(a, J).includes(b)) break;
        s = n;
      }
      for (int n = 1; n <= s; ++n) {
        ++rep.comparisons;
        const auto& E = layers[static_cast<std::size_t>(n)];
        if (!(submodule_intersection(zs[i], E) == submodule_intersection(zs[j], E))) {
          rep.violations.push_back({i, j, n});
        }
      }
    }
  }
  return rep;
}

}  // namespace modlat
