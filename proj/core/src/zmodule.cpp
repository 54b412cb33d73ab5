#include "modlat/zmodule.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <regex>
#include <set>

#include "modlat/classify.hpp"
#include "modlat/error.hpp"

namespace modlat {

namespace {

using Big = unsigned __int128;
constexpr Big kCap = Big{std::numeric_limits<std::uint64_t>::max()} + 1;

Big sat_add(Big a, Big b) { return std::min(kCap, a + b); }
Big sat_mul(Big a, Big b) {
  if (a == 0 || b == 0) return 0;
  if (a >= kCap || b >= kCap || a > kCap / b) return kCap;
  return std::min(kCap, a * b);
}
Big sat_pow(Big p, long long e) {
  Big r = 1;
  for (long long i = 0; i < e && r < kCap; ++i) r = sat_mul(r, p);
  return r;
}

// Gaussian binomial [n choose k]_p, saturating at kCap.
Big gaussian(Int p, int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<Big> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      // [m, j] = [m-1, j-1] + p^j [m-1, j]
      row[j] = sat_add(row[j - 1], sat_mul(sat_pow(p, j), row[j]));
    }
  }
  return row[k];
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

Int parse_int(const std::string& s, const std::string& ctx) {
  if (s.empty() || s.size() > 15 || !std::all_of(s.begin(), s.end(), ::isdigit)) {
    throw Error(ErrorCode::ParseError, "expected an integer in '" + ctx + "'");
  }
  return std::stoll(s);
}

Int parse_prime(const std::string& s, const std::string& ctx) {
  Int p = parse_int(s, ctx);
  if (!zp::is_prime(p)) throw Error(ErrorCode::ParseError, s + " is not prime in '" + ctx + "'");
  return p;
}

Multiplicity parse_mult(const std::string& s, const std::string& ctx) {
  if (s == "inf") return Multiplicity::inf();
  return {false, static_cast<std::uint64_t>(parse_int(s, ctx))};
}

Multiplicity times(Multiplicity a, Multiplicity b) {
  if (a.zero() || b.zero()) return {};
  if (a.infinite || b.infinite) return Multiplicity::inf();
  return {false, a.n * b.n};
}

template <class K>
void add_to(std::map<K, Multiplicity>& m, const K& key, Multiplicity mult) {
  if (mult.zero()) return;
  m[key] += mult;
}

std::string with_mult(const std::string& atom, const Multiplicity& m) {
  if (m.infinite) return "inf*" + atom;
  if (m.n == 1) return atom;
  return std::to_string(m.n) + "*" + atom;
}

std::vector<Int> first_primes(int k) {
  std::vector<Int> out;
  for (Int q = 2; static_cast<int>(out.size()) < k; ++q)
    if (zp::is_prime(q)) out.push_back(q);
  return out;
}

bool has_q(const MinimaxDescriptor& d) {
  return std::any_of(d.localized.begin(), d.localized.end(), [](const auto& kv) { return kv.first.all_primes; });
}

std::vector<int> p_type(const MinimaxDescriptor& d, Int p) {
  std::vector<int> lambda;
  for (const auto& [key, m] : d.torsion) {
    if (key.first != p) continue;
    lambda.insert(lambda.end(), m.n, key.second);
  }
  return lambda;
}

}  // namespace

bool MinimaxDescriptor::is_zero() const {
  return free_rank.zero() && torsion.empty() && prufer.empty() && localized.empty();
}

std::string MinimaxDescriptor::text() const {
  std::vector<std::string> terms;
  if (!free_rank.zero()) terms.push_back(with_mult("Z", free_rank));
  for (const auto& [loc, m] : localized) {
    std::string atom;
    if (loc.all_primes) {
      atom = "Q";
    } else if (loc.primes.size() == 1) {
      atom = "Z[1/" + std::to_string(loc.primes[0]) + "]";
    } else {
      atom = "Z[1/{";
      for (std::size_t i = 0; i < loc.primes.size(); ++i) atom += (i ? "," : "") + std::to_string(loc.primes[i]);
      atom += "}]";
    }
    terms.push_back(with_mult(atom, m));
  }
  for (const auto& [key, m] : torsion) {
    terms.push_back(with_mult("Z/" + std::to_string(zp::power(key.first, key.second)), m));
  }
  for (const auto& [p, m] : prufer) terms.push_back(with_mult("Prufer(" + std::to_string(p) + ")", m));
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " + " : "") + terms[i];
  return out;
}

MinimaxDescriptor parse_descriptor(const std::string& text) {
  std::string s = strip_spaces(text);
  for (std::size_t pos; (pos = s.find("Prüfer")) != std::string::npos;) s.replace(pos, std::string("Prüfer").size(), "Prufer");
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty descriptor");

  static const std::regex prefix(R"(^(inf|\d+)\*(.+)$)");
  static const std::regex suffix(R"(^(.+)\^(inf|\d+)$)");
  static const std::regex zmod(R"(^Z/(\d+)$)");
  static const std::regex pruf(R"(^Prufer\((\d+)\)$)");
  static const std::regex loc1(R"(^Z\[1/(\d+)\]$)");
  static const std::regex locs(R"(^Z\[1/\{(\d+(?:,\d+)*)\}\]$)");

  MinimaxDescriptor d;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('+', start);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(start, end - start);
    start = end + 1;
    if (term.empty()) throw Error(ErrorCode::ParseError, "empty term in '" + text + "'");

    Multiplicity mult{false, 1};
    std::smatch m;
    if (std::regex_match(term, m, prefix)) {
      mult = times(mult, parse_mult(m[1], text));
      term = m[2];
    }
    if (std::regex_match(term, m, suffix)) {
      mult = times(mult, parse_mult(m[2], text));
      term = m[1];
    }

    if (term == "0") {
      continue;
    } else if (term == "Z") {
      if (!mult.zero()) d.free_rank += mult;
    } else if (term == "Q") {
      add_to(d.localized, Localization{{}, true}, mult);
    } else if (std::regex_match(term, m, zmod)) {
      Int n = parse_int(m[1], text);
      if (n == 0) throw Error(ErrorCode::ParseError, "Z/0 is not a torsion summand; write Z");
      for (Int q = 2; n > 1; ++q) {
        int k = 0;
        while (n % q == 0) {
          n /= q;
          ++k;
        }
        if (k > 0) add_to(d.torsion, std::pair<Int, int>{q, k}, mult);
      }
    } else if (std::regex_match(term, m, pruf)) {
      add_to(d.prufer, parse_prime(m[1], text), mult);
    } else if (std::regex_match(term, m, loc1) || std::regex_match(term, m, locs)) {
      std::set<Int> primes;
      std::string list = m[1];
      std::size_t a = 0;
      while (a <= list.size()) {
        std::size_t b = list.find(',', a);
        if (b == std::string::npos) b = list.size();
        primes.insert(parse_prime(list.substr(a, b - a), text));
        a = b + 1;
      }
      add_to(d.localized, Localization{{primes.begin(), primes.end()}, false}, mult);
    } else {
      throw Error(ErrorCode::ParseError, "unknown summand '" + term + "' in '" + text + "'");
    }
  }
  return d;
}

bool is_minimax(const MinimaxDescriptor& d) {
  if (d.free_rank.infinite || has_q(d)) return false;
  auto finite = [](const auto& m) {
    return std::none_of(m.begin(), m.end(), [](const auto& kv) { return kv.second.infinite; });
  };
  return finite(d.torsion) && finite(d.prufer) && finite(d.localized);
}

MinimaxDescriptor artinian_quotient(const MinimaxDescriptor& d) {
  if (!is_minimax(d)) throw Error(ErrorCode::NotMinimax, d.text() + " is not minimax");
  MinimaxDescriptor q;
  q.torsion = d.torsion;
  q.prufer = d.prufer;
  // Z[1/S] / Z is the sum of Prufer(p) over p in S.
  for (const auto& [loc, m] : d.localized)
    for (Int p : loc.primes) add_to(q.prufer, p, m);
  return q;
}

std::uint64_t count_p_subgroups(Int p, std::vector<int> lambda) {
  std::sort(lambda.rbegin(), lambda.rend());
  while (!lambda.empty() && lambda.back() <= 0) lambda.pop_back();
  if (lambda.empty()) return 1;
  const int width = lambda.front();
  std::vector<int> conj(static_cast<std::size_t>(width) + 1, 0);  // conj[i], i = 1..width
  for (int part : lambda)
    for (int i = 1; i <= part; ++i) ++conj[i];

  // Subgroups of type mu: prod_i p^{mu'_{i+1}(lambda'_i - mu'_i)} [lambda'_i - mu'_{i+1}, mu'_i - mu'_{i+1}]_p.
  std::vector<int> mu(static_cast<std::size_t>(width) + 2, 0);
  Big total = 0;
  std::function<void(int, int)> rec = [&](int i, int bound) {
    if (i > width) {
      Big term = 1;
      for (int j = 1; j <= width; ++j) {
        term = sat_mul(term, sat_pow(static_cast<Big>(p), static_cast<long long>(mu[j + 1]) * (conj[j] - mu[j])));
        term = sat_mul(term, gaussian(p, conj[j] - mu[j + 1], mu[j] - mu[j + 1]));
      }
      total = sat_add(total, term);
      return;
    }
    for (int v = 0; v <= std::min(bound, conj[i]); ++v) {
      mu[i] = v;
      rec(i + 1, v);
    }
    mu[i] = 0;
  };
  rec(1, conj[1]);
  if (total >= kCap) throw Error(ErrorCode::TooLarge, "subgroup count exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

SymbolicCardinal count_submodules(const MinimaxDescriptor& d) {
  if (!is_minimax(d)) return SymbolicCardinal::continuum();
  const MinimaxDescriptor q = artinian_quotient(d);
  for (const auto& [p, m] : q.prufer)
    if (m.n >= 2) return SymbolicCardinal::continuum();
  if (!d.free_rank.zero() || !q.prufer.empty()) return SymbolicCardinal::aleph0();
  std::set<Int> primes;
  for (const auto& [key, m] : d.torsion) primes.insert(key.first);
  Big total = 1;
  for (Int p : primes) total = sat_mul(total, count_p_subgroups(p, p_type(d, p)));
  if (total >= kCap) throw Error(ErrorCode::TooLarge, "subgroup count exceeds 64 bits");
  return SymbolicCardinal::finite(static_cast<std::uint64_t>(total));
}

bool is_meager_z(const MinimaxDescriptor& d) {
  const bool torsion_free_part = !d.free_rank.zero() || !d.localized.empty();
  if (!torsion_free_part) {
    std::map<Int, Multiplicity> per_prime;
    for (const auto& [key, m] : d.torsion) per_prime[key.first] += m;
    for (const auto& [p, m] : d.prufer) per_prime[p] += m;
    return std::all_of(per_prime.begin(), per_prime.end(), [](const auto& kv) { return kv.second.is_one(); });
  }
  if (!d.torsion.empty() || !d.prufer.empty()) return false;
  Multiplicity rank = d.free_rank;
  for (const auto& [loc, m] : d.localized) rank += m;
  return rank.is_one();
}

std::string OrdinalLength::to_string() const {
  switch (kind) {
    case Kind::Finite: return "Finite(" + std::to_string(n) + ")";
    case Kind::Omega: return "Omega";
    case Kind::OmegaPlusOne: return "OmegaPlusOne";
    case Kind::AboveOmegaPlusOne: return "AboveOmegaPlusOne";
  }
  return "?";
}

OrdinalLength ordinal_length_class(const MinimaxDescriptor& d) {
  const bool fg = !d.free_rank.infinite && d.prufer.empty() && d.localized.empty() &&
                  std::none_of(d.torsion.begin(), d.torsion.end(), [](const auto& kv) { return kv.second.infinite; });
  if (!fg) throw Error(ErrorCode::NotFinitelyGenerated, d.text() + " is not finitely generated");
  OrdinalLength out;
  if (d.free_rank.zero()) {
    for (const auto& [key, m] : d.torsion) out.n += m.n * static_cast<std::uint64_t>(key.second);
    return out;
  }
  if (d.free_rank.is_one()) {
    if (d.torsion.empty()) {
      out.kind = OrdinalLength::Kind::Omega;
      return out;
    }
    if (d.torsion.size() == 1 && d.torsion.begin()->first.second == 1 && d.torsion.begin()->second.is_one()) {
      out.kind = OrdinalLength::Kind::OmegaPlusOne;
      return out;
    }
  }
  out.kind = OrdinalLength::Kind::AboveOmegaPlusOne;
  return out;
}

const char* to_string(UniserialCase c) noexcept {
  switch (c) {
    case UniserialCase::FiniteChain: return "FiniteChain";
    case UniserialCase::PruferCase: return "PruferCase";
    case UniserialCase::DVRCase: return "DVRCase";
  }
  return "?";
}

UniserialZ uniserial_z(const MinimaxDescriptor& d) {
  if (d.is_zero()) return {true, UniserialCase::FiniteChain};
  if (!d.free_rank.zero() || !d.localized.empty()) return {};
  if (d.torsion.size() + d.prufer.size() != 1) return {};
  if (d.torsion.size() == 1) {
    if (d.torsion.begin()->second.is_one()) return {true, UniserialCase::FiniteChain};
    return {};
  }
  if (d.prufer.begin()->second.is_one()) return {true, UniserialCase::PruferCase};
  return {};
}

const char* to_string(CrosscheckReport::Claim c) noexcept {
  switch (c) {
    case CrosscheckReport::Claim::None: return "none";
    case CrosscheckReport::Claim::Chain: return "chain";
    case CrosscheckReport::Claim::Exponential: return "exponential";
    case CrosscheckReport::Claim::Exact: return "exact";
  }
  return "?";
}

FiniteModule truncation_model(const MinimaxDescriptor& d, Int p, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "truncation level must be >= 1");
  if (has_q(d)) {
    const FiniteRing R = zmod_ring([&] {
      Int n = 1;
      for (Int q : first_primes(k)) n *= q;
      return n;
    }());
    std::vector<FiniteModule> parts;
    for (std::size_t f = 0; f < R.factor_count(); ++f) parts.push_back(cyclic_quotient(factor_maximal_ideal(R, f)));
    return direct_sum(parts);
  }
  if (!zp::is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  auto copies = [&](const Multiplicity& m) { return m.infinite ? static_cast<std::uint64_t>(k) : m.n; };
  std::vector<int> exps;
  exps.insert(exps.end(), copies(d.free_rank), k);
  for (const auto& [key, m] : d.torsion)
    if (key.first == p) exps.insert(exps.end(), copies(m), std::min(key.second, k));
  if (auto it = d.prufer.find(p); it != d.prufer.end()) exps.insert(exps.end(), copies(it->second), k);
  for (const auto& [loc, m] : d.localized) exps.insert(exps.end(), copies(m), k);
  if (exps.empty()) throw Error(ErrorCode::InvalidArgument, d.text() + " has trivial " + std::to_string(p) + "-part");

  const FiniteRing R(cyclic_ring(p, k));
  std::vector<FiniteModule> parts;
  for (int e : exps) parts.push_back(cyclic_quotient(product_ideal_span(R, Mat{{zp::power(p, e) % zp::power(p, k)}})));
  return direct_sum(parts);
}

CrosscheckReport truncation_crosscheck(const MinimaxDescriptor& d, Int p, int k, std::size_t limit,
                                       std::size_t element_budget) {
  const FiniteModule model = truncation_model(d, p, k);
  CrosscheckReport r;
  r.p = p;
  r.level = k;
  r.model_text = model.describe();
  const ClassificationReport c = classify(model, limit, element_budget);
  r.count = c.submodule_count;
  r.uniserial = c.uniserial;
  r.meager = c.meager;
  r.verdict = count_submodules(d);

  if (r.verdict.kind() == SymbolicCardinal::Kind::Continuum) {
    r.claim = CrosscheckReport::Claim::Exponential;
    r.expected = std::uint64_t{1} << k;
    r.consistent = r.count >= r.expected;
  } else if (r.verdict.kind() == SymbolicCardinal::Kind::Aleph0 && uniserial_z(d).uniserial) {
    r.claim = CrosscheckReport::Claim::Chain;
    r.expected = static_cast<std::uint64_t>(k) + 1;
    r.consistent = r.count == r.expected;
  } else if (r.verdict.is_finite()) {
    const auto lambda = p_type(d, p);
    if (lambda.empty() || *std::max_element(lambda.begin(), lambda.end()) <= k) {
      r.claim = CrosscheckReport::Claim::Exact;
      r.expected = count_p_subgroups(p, lambda);
      r.consistent = r.count == r.expected;
    }
  }
  return r;
}

}  // namespace modlat
