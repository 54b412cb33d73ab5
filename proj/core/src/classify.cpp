#include "modlat/classify.hpp"

#include <algorithm>

#include "modlat/error.hpp"

namespace modlat {

namespace {

UniserialResult chain_of(const SubmoduleLattice& lat) {
  UniserialResult out;
  const auto counts = lat.counts_by_length();
  out.uniserial = std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 1; });
  if (out.uniserial)
    for (std::size_t i = 0; i < lat.size(); ++i) out.chain.push_back(lat.node(i));
  return out;
}

MeagerResult meager_scan(const SubmoduleLattice& lat) {
  const FiniteModule& m = lat.module();
  MeagerResult out;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Submodule n = lat.node(i);
    const QuotientModule q = quotient(m, n);
    for (std::size_t f = 0; f < m.ring().factor_count(); ++f) {
      const Submodule soc = socle(q.module, f);
      if (soc.length() < 2) continue;
      const zp::SubgroupBasis b = zp::basis_of(q.module.layout(), soc.span());
      Mat gens = n.generators();
      for (std::size_t t = 0; t < 2; ++t) gens.push_back(m.layout().image(b.elements[t], q.lift));
      out.meager = false;
      out.witness = MeagerWitness{n, span_submodule(m, gens), f};
      return out;
    }
  }
  return out;
}

}  // namespace

UniserialResult is_uniserial(const FiniteModule& m, std::size_t limit, std::size_t element_budget) {
  return chain_of(enumerate_submodules(m, limit, element_budget));
}

bool uniserial_by_layers(const FiniteModule& m) {
  const ProductIdeal J = radical(m.ring());
  Submodule layer = full_submodule(m);
  while (!layer.is_zero()) {
    Submodule next = ideal_times(J, layer);
    if (layer.length() - next.length() > 1) return false;
    layer = std::move(next);
  }
  return true;
}

MeagerResult is_meager(const FiniteModule& m, std::size_t limit, std::size_t element_budget) {
  return meager_scan(enumerate_submodules(m, limit, element_budget));
}

bool meager_fast_path(const FiniteModule& m) {
  for (const auto& c : primary_components(m).components) {
    if (!uniserial_by_layers(as_module(c.torsion_part).module)) return false;
  }
  return true;
}

std::vector<Submodule> discriminating_atoms(const FiniteModule& m, std::size_t limit,
                                            std::size_t element_budget) {
  const SubmoduleLattice lat = enumerate_submodules(m, limit, element_budget);
  std::vector<Submodule> out;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.spans()[i].length() == 1) out.push_back(lat.node(i));
  return out;
}

const char* to_string(SinglePrimeClass c) noexcept {
  return c == SinglePrimeClass::FiniteLengthChain ? "FiniteLengthChain" : "NotMeager";
}

SinglePrimeClass classify_single_prime(const FiniteModule& m, std::size_t limit, std::size_t element_budget) {
  const auto asso = associated_primes(m);
  if (asso.size() != 1) {
    throw Error(ErrorCode::MultiplePrimes,
                "expected one associated prime, found " + std::to_string(asso.size()), asso.size());
  }
  const SubmoduleLattice lat = enumerate_submodules(m, limit, element_budget);
  const bool meager = meager_scan(lat).meager;
  if (meager != chain_of(lat).uniserial) {
    throw Error(ErrorCode::DecompositionMismatch, "single-prime module is meager but not a chain");
  }
  return meager ? SinglePrimeClass::FiniteLengthChain : SinglePrimeClass::NotMeager;
}

ClassificationReport classify(const FiniteModule& m, std::size_t limit, std::size_t element_budget) {
  const SubmoduleLattice lat = enumerate_submodules(m, limit, element_budget);
  ClassificationReport r;
  r.submodule_count = lat.size();
  r.associated = associated_primes(m);
  r.single_associated_prime = r.associated.size() == 1;
  auto chain = chain_of(lat);
  r.uniserial = chain.uniserial;
  r.chain = std::move(chain.chain);
  auto meager = meager_scan(lat);
  r.meager = meager.meager;
  r.meager_witness = std::move(meager.witness);
  r.fast_path_agrees = meager_fast_path(m) == r.meager;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat.spans()[i].length() == 1) r.atoms.push_back(lat.node(i));
  return r;
}

}  // namespace modlat
