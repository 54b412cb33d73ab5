#include "modlat/ring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "modlat/error.hpp"

namespace modlat {

struct LocalAlgebra::Impl {
  Int p = 2;
  int exponent = 1;
  Int q = 2;
  std::size_t m = 1;
  std::vector<std::string> labels;
  std::vector<std::vector<Vec>> table;
  zp::Layout layout;
  std::vector<Mat> mult;
  zp::Span maximal;
  int nilpotency = 1;
  std::vector<std::string> variables;
  std::vector<std::vector<int>> monomials;
};

namespace {

std::string triple(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

Vec mul_table(const std::vector<std::vector<Vec>>& t, Int q, const Vec& a, const Vec& b) {
  const std::size_t m = a.size();
  Vec out(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (b[j] == 0) continue;
      const Int c = zp::mul_mod(a[i], b[j], q);
      const Vec& prod = t[i][j];
      for (std::size_t k = 0; k < m; ++k) {
        if (prod[k] != 0) out[k] = zp::mod(out[k] + zp::mul_mod(c, prod[k], q), q);
      }
    }
  }
  return out;
}

zp::Span product_span(const zp::Layout& layout, const std::vector<std::vector<Vec>>& t, Int q,
                      const zp::Span& a, const zp::Span& b) {
  const Mat ga = zp::generators(layout, a);
  const Mat gb = zp::generators(layout, b);
  Mat prods;
  for (const auto& x : ga)
    for (const auto& y : gb) prods.push_back(mul_table(t, q, x, y));
  return zp::span(layout, prods);
}

}  // namespace

LocalAlgebra LocalAlgebra::from_table(Int p, int exponent, std::vector<std::vector<Vec>> table,
                                      std::vector<std::string> labels,
                                      std::optional<MonomialData> monomials) {
  if (!zp::is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (exponent < 1) throw Error(ErrorCode::InvalidArgument, "coefficient exponent must be >= 1");
  const std::size_t m = table.size();
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "empty structure-constant table");
  const Int q = zp::power(p, exponent);
  for (auto& row : table) {
    if (row.size() != m) throw Error(ErrorCode::InvalidArgument, "structure table is not square");
    for (auto& v : row) {
      if (v.size() != m) throw Error(ErrorCode::InvalidArgument, "structure vector has wrong length");
      for (auto& a : v) a = zp::mod(a, q);
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->exponent = exponent;
  impl->q = q;
  impl->m = m;

  for (std::size_t j = 0; j < m; ++j) {
    Vec e(m, 0);
    e[j] = 1;
    if (table[0][j] != e) throw Error(ErrorCode::NoUnit, "b_0 * b_j != b_j at " + triple(0, j));
    if (table[j][0] != e) throw Error(ErrorCode::NoUnit, "b_j * b_0 != b_j at " + triple(j, 0));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (table[i][j] != table[j][i]) throw Error(ErrorCode::NonCommutative, "at " + triple(i, j));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        Vec bk(m, 0), bi(m, 0);
        bk[k] = 1;
        bi[i] = 1;
        if (mul_table(table, q, table[i][j], bk) != mul_table(table, q, bi, table[j][k])) {
          throw Error(ErrorCode::NonAssociative, "at " + triple(i, j, k));
        }
      }
    }
  }
  for (std::size_t i = 1; i < m; ++i)
    for (std::size_t j = 1; j < m; ++j)
      if (table[i][j][0] % p != 0) {
        throw Error(ErrorCode::MaximalIdealNotNilpotent,
                    "b_1..b_{m-1} do not span an ideal with F_p residue field at " + triple(i, j));
      }

  impl->layout = zp::Layout(std::vector<zp::Cyclic>(m, zp::Cyclic{p, exponent}));
  impl->mult.resize(m);
  for (std::size_t i = 0; i < m; ++i) impl->mult[i] = table[i];

  Mat mgens;
  {
    Vec pb0(m, 0);
    pb0[0] = p;
    mgens.push_back(pb0);
    for (std::size_t i = 1; i < m; ++i) {
      Vec e(m, 0);
      e[i] = 1;
      mgens.push_back(std::move(e));
    }
  }
  impl->maximal = zp::span(impl->layout, mgens);
  zp::Span pw = impl->maximal;
  int d = 1;
  while (pw.length() > 0) {
    zp::Span next = product_span(impl->layout, table, q, pw, impl->maximal);
    if (next.length() == pw.length()) {
      throw Error(ErrorCode::MaximalIdealNotNilpotent,
                  "M^" + std::to_string(d) + " = M^" + std::to_string(d + 1) + " is nonzero");
    }
    pw = std::move(next);
    ++d;
  }
  impl->nilpotency = d;

  if (labels.empty()) {
    for (std::size_t i = 0; i < m; ++i) labels.push_back(i == 0 ? "1" : "b" + std::to_string(i));
  }
  if (labels.size() != m) throw Error(ErrorCode::InvalidArgument, "label count differs from dimension");
  impl->labels = std::move(labels);
  impl->table = std::move(table);
  if (monomials) {
    impl->variables = std::move(monomials->variables);
    impl->monomials = std::move(monomials->exponents);
  }
  return LocalAlgebra(std::move(impl));
}

bool operator==(const LocalAlgebra& a, const LocalAlgebra& b) noexcept {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->p == b.impl_->p && a.impl_->exponent == b.impl_->exponent &&
         a.impl_->table == b.impl_->table;
}

Int LocalAlgebra::p() const noexcept { return impl_->p; }
int LocalAlgebra::exponent() const noexcept { return impl_->exponent; }
Int LocalAlgebra::modulus() const noexcept { return impl_->q; }
std::size_t LocalAlgebra::dim() const noexcept { return impl_->m; }
int LocalAlgebra::length() const noexcept { return static_cast<int>(impl_->m) * impl_->exponent; }
const std::vector<std::string>& LocalAlgebra::labels() const noexcept { return impl_->labels; }
const zp::Layout& LocalAlgebra::layout() const noexcept { return impl_->layout; }
const std::vector<Mat>& LocalAlgebra::multiplication_matrices() const noexcept { return impl_->mult; }
int LocalAlgebra::nilpotency() const noexcept { return impl_->nilpotency; }
const std::vector<std::vector<int>>& LocalAlgebra::monomials() const noexcept {
  return impl_->monomials;
}
const std::vector<std::string>& LocalAlgebra::variables() const noexcept { return impl_->variables; }
const Vec& LocalAlgebra::basis_product(std::size_t i, std::size_t j) const { return impl_->table[i][j]; }

Mat LocalAlgebra::multiplication_matrix(const Vec& a) const {
  const std::size_t m = impl_->m;
  Mat out(m, Vec(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    Vec bj(m, 0);
    bj[j] = 1;
    out[j] = multiply(a, bj);
  }
  return out;
}

Vec LocalAlgebra::one() const { return basis_vector(0); }

Vec LocalAlgebra::basis_vector(std::size_t i) const {
  Vec v(impl_->m, 0);
  v[i] = 1;
  return v;
}

Vec LocalAlgebra::multiply(const Vec& a, const Vec& b) const {
  return mul_table(impl_->table, impl_->q, a, b);
}

std::string LocalAlgebra::describe() const {
  std::ostringstream os;
  if (impl_->m == 1) {
    os << "Z/" << impl_->q;
  } else {
    os << (impl_->exponent == 1 ? "F_" : "Z/") << impl_->q << "-algebra of dim " << impl_->m << " [";
    for (std::size_t i = 0; i < impl_->m; ++i) os << (i ? "," : "") << impl_->labels[i];
    os << "]";
  }
  return os.str();
}

LocalAlgebra make_local_algebra(Int p, std::vector<std::vector<Vec>> table,
                                std::vector<std::string> labels) {
  return LocalAlgebra::from_table(p, 1, std::move(table), std::move(labels));
}

std::vector<int> parse_monomial(const std::vector<std::string>& vars, const std::string& text) {
  std::vector<int> exps(vars.size(), 0);
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty monomial");
  if (s == "1") return exps;
  std::stringstream ss(s);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    std::string name = factor;
    int k = 1;
    if (auto caret = factor.find('^'); caret != std::string::npos) {
      name = factor.substr(0, caret);
      const std::string num = factor.substr(caret + 1);
      if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit)) {
        throw Error(ErrorCode::ParseError, "bad exponent in monomial '" + text + "'");
      }
      k = std::stoi(num);
    }
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw Error(ErrorCode::ParseError, "unknown variable '" + name + "' in '" + text + "'");
    exps[static_cast<std::size_t>(it - vars.begin())] += k;
  }
  return exps;
}

std::string monomial_label(const std::vector<std::string>& vars, const std::vector<int>& exps) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
  }
  return out.empty() ? "1" : out;
}

LocalAlgebra truncated_polynomial_ring(Int p, const std::vector<std::string>& vars, int cap,
                                       const std::vector<std::string>& relations,
                                       std::size_t max_dim) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "degree cap must be >= 1");
  if (vars.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one variable");
  std::vector<std::vector<int>> rels;
  for (const auto& r : relations) rels.push_back(parse_monomial(vars, r));

  auto divisible = [](const std::vector<int>& a, const std::vector<int>& r) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] < r[i]) return false;
    return true;
  };
  auto survives = [&](const std::vector<int>& a) {
    return std::none_of(rels.begin(), rels.end(), [&](const auto& r) { return divisible(a, r); });
  };

  const std::size_t nv = vars.size();
  std::vector<std::vector<int>> basis;
  std::vector<int> cur(nv, 0);
  // Lex-descending exponent vectors of total degree `left` in positions >= i.
  std::function<void(std::size_t, int)> fill = [&](std::size_t i, int left) {
    if (i + 1 == nv) {
      cur[i] = left;
      if (survives(cur)) {
        basis.push_back(cur);
        if (basis.size() > max_dim) {
          throw Error(ErrorCode::TooLarge,
                      "basis exceeds " + std::to_string(max_dim) + " monomials");
        }
      }
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      fill(i + 1, left - k);
    }
    cur[i] = 0;
  };
  for (int d = 0; d < cap; ++d) fill(0, d);

  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  const std::size_t m = basis.size();
  std::vector<std::vector<Vec>> table(m, std::vector<Vec>(m, Vec(m, 0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<int> prod(nv);
      for (std::size_t k = 0; k < nv; ++k) prod[k] = basis[i][k] + basis[j][k];
      if (auto it = index.find(prod); it != index.end()) table[i][j][it->second] = 1;
    }
  }
  std::vector<std::string> labels;
  for (const auto& b : basis) labels.push_back(monomial_label(vars, b));
  return LocalAlgebra::from_table(p, 1, std::move(table), std::move(labels),
                                  LocalAlgebra::MonomialData{vars, basis});
}

LocalAlgebra cyclic_ring(Int p, int k) {
  return LocalAlgebra::from_table(p, k, {{Vec{1}}}, {"1"});
}

Mat Ideal::generators() const { return zp::generators(ring_.layout(), span_); }

bool Ideal::contains(const Vec& x) const { return zp::contains(ring_.layout(), span_, x); }

bool Ideal::includes(const Ideal& other) const {
  return zp::includes(ring_.layout(), span_, other.span_);
}

Ideal ideal_span(const LocalAlgebra& ring, const Mat& gens) {
  const auto& L = ring.layout();
  return Ideal(ring, zp::close(L, zp::span(L, gens), ring.multiplication_matrices()));
}

Ideal zero_ideal(const LocalAlgebra& ring) { return Ideal(ring, zp::zero_span(ring.layout())); }

Ideal unit_ideal(const LocalAlgebra& ring) { return Ideal(ring, zp::full_span(ring.layout())); }

Ideal maximal_ideal(const LocalAlgebra& ring) {
  Mat gens;
  Vec pb0 = ring.one();
  pb0[0] = ring.p();
  gens.push_back(pb0);
  for (std::size_t i = 1; i < ring.dim(); ++i) gens.push_back(ring.basis_vector(i));
  return Ideal(ring, zp::span(ring.layout(), gens));
}

Ideal ideal_combine(IdealOp op, const Ideal& a, const Ideal& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorCode::MixedParents, "ideals of different algebras");
  const auto& R = a.ring();
  const auto& L = R.layout();
  switch (op) {
    case IdealOp::Sum:
      return Ideal(R, zp::sum(L, a.span(), b.span()));
    case IdealOp::Intersection:
      return Ideal(R, zp::intersect(L, a.span(), b.span()));
    case IdealOp::Product: {
      Mat prods;
      for (const auto& x : a.generators())
        for (const auto& y : b.generators()) prods.push_back(R.multiply(x, y));
      return Ideal(R, zp::span(L, prods));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown ideal operation");
}

Ideal ideal_power(const Ideal& a, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative ideal power");
  Ideal out = unit_ideal(a.ring());
  for (int i = 0; i < n; ++i) out = ideal_combine(IdealOp::Product, out, a);
  return out;
}

int graded_piece_dim(const LocalAlgebra& ring, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
  const Ideal m = maximal_ideal(ring);
  return ideal_power(m, n).length() - ideal_power(m, n + 1).length();
}

std::vector<Ideal> enumerate_ideals(const LocalAlgebra& ring, std::size_t limit,
                                    std::size_t element_budget) {
  auto data = zp::enumerate_invariant(ring.layout(), ring.multiplication_matrices(), limit,
                                      element_budget);
  std::vector<Ideal> out;
  out.reserve(data.nodes.size());
  for (auto& s : data.nodes) out.emplace_back(ring, std::move(s));
  return out;
}

}  // namespace modlat
