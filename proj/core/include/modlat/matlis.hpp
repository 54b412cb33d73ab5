#pragma once

// Matlis duality for finite modules. The injective hull E of the residue
// field is the Z/q-dual of R with (r f)(s) = f(r s); over a product ring it is
// the sum of the factors' hulls. T(M) = Hom_R(M, E).

#include <optional>
#include <vector>

#include "modlat/module.hpp"

namespace modlat {

FiniteModule injective_hull(const FiniteRing& ring);

HomModule matlis_dual(const FiniteModule& m);

/// The evaluation map M -> T(T(M)), checked to be a bijective module map.
struct DualityCertificate {
  FiniteModule module;
  HomModule dual;
  HomModule double_dual;
  Mat witness;  // row j = image of M's j-th generator in T(T(M))
};
/// Throws NotBijective when the evaluation map fails to be an isomorphism.
DualityCertificate double_dual_certificate(const FiniteModule& m);

/// {f in T(M) : f(N) = 0}.
Submodule zeta(const HomModule& dual, const Submodule& n);

/// Image of a submodule of M in T(T(M)) under the certificate.
Submodule evaluate(const DualityCertificate& cert, const Submodule& n);

/// J^n M for the radical J.
Submodule radical_power(const FiniteModule& m, int n);

/// Largest n with N in N' + J^n M and N' in N + J^n M; nullopt when N = N'.
std::optional<int> distance_exponent(const Submodule& a, const Submodule& b);
/// exp(-s), 0 for equal submodules.
double submodule_distance(const Submodule& a, const Submodule& b);

struct AuditViolation {
  std::size_t first = 0;
  std::size_t second = 0;
  int n = 0;
};
struct AuditReport {
  std::size_t submodules = 0;
  std::size_t pairs = 0;
  std::size_t comparisons = 0;
  int max_n = 0;
  std::vector<AuditViolation> violations;
};
/// For every pair of submodules and every n up to the Loewy length: if
/// d(N, N') <= exp(-n) then zeta(N) and zeta(N') meet the n-th socle layer of
/// T(M) in the same submodule.
AuditReport continuity_audit(const FiniteModule& m, std::size_t limit = kDefaultNodeLimit,
                             std::size_t element_budget = kDefaultElementBudget);

}  // namespace modlat
