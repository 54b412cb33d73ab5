#include "modlat/zp.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "modlat/error.hpp"

namespace modlat::zp {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Int a) { return a == 0; });
}

// r <- r - k * s over Z/q
void axpy(Vec& r, Int k, const Vec& s, Int q) {
  if (k == 0) return;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (s[i] != 0) r[i] = mod(r[i] - mul_mod(k, s[i], q), q);
  }
}

Vec scaled(const Vec& r, Int k, Int q) {
  Vec out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = mul_mod(r[i], k, q);
  return out;
}

Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

int pivot_length(const Mat& rows, Int p, int top) {
  int len = 0;
  for (const auto& r : rows) {
    for (Int a : r) {
      if (a != 0) {
        len += top - valuation(a, p, top);
        break;
      }
    }
  }
  return len;
}

}  // namespace

Int power(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Int mod(Int a, Int q) {
  Int r = a % q;
  return r < 0 ? r + q : r;
}

Int mul_mod(Int a, Int b, Int q) {
  return static_cast<Int>(mod(static_cast<Int>((static_cast<__int128>(a) * b) % q), q));
}

int valuation(Int a, Int p, int e) {
  a = mod(a, power(p, e));
  if (a == 0) return e;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

Int unit_inverse(Int u, Int q) {
  Int a = mod(u, q), b = q;
  Int x0 = 1, x1 = 0;
  while (b != 0) {
    Int t = a / b;
    Int tmp = a - t * b;
    a = b;
    b = tmp;
    tmp = x0 - t * x1;
    x0 = x1;
    x1 = tmp;
  }
  if (a != 1) throw Error(ErrorCode::InvalidArgument, "not a unit modulo " + std::to_string(q));
  return mod(x0, q);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Mat howell_form(Mat rows, Int p, int e) {
  const Int q = power(p, e);
  Mat work;
  for (auto& r : rows) {
    for (auto& a : r) a = mod(a, q);
    if (!is_zero_vec(r)) work.push_back(std::move(r));
  }
  if (work.empty()) return {};
  const std::size_t n = work.front().size();

  Mat pivots;
  std::vector<std::size_t> cols;
  std::vector<int> vals;
  for (std::size_t c = 0; c < n && !work.empty(); ++c) {
    std::size_t best = npos;
    int best_v = e;
    for (std::size_t i = 0; i < work.size(); ++i) {
      int v = valuation(work[i][c], p, e);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == npos) continue;

    Vec r = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
    const Int pv = power(p, best_v);
    r = scaled(r, unit_inverse(r[c] / pv, q), q);
    for (auto& w : work) {
      if (w[c] != 0) axpy(w, w[c] / pv, r, q);
    }
    if (best_v > 0) {
      Vec s = scaled(r, power(p, e - best_v), q);
      if (!is_zero_vec(s)) work.push_back(std::move(s));
    }
    std::erase_if(work, is_zero_vec);
    pivots.push_back(std::move(r));
    cols.push_back(c);
    vals.push_back(best_v);
  }

  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Int pv = power(p, vals[i]);
    for (std::size_t j = 0; j < i; ++j) {
      Int k = pivots[j][cols[i]] / pv;
      if (k != 0) axpy(pivots[j], k, pivots[i], q);
    }
  }
  return pivots;
}

SmithForm smith_form(Mat A, std::size_t n, Int p, int e) {
  const Int q = power(p, e);
  for (auto& r : A)
    for (auto& a : r) a = mod(a, q);
  SmithForm out{std::vector<int>(n, e), identity(n), identity(n)};
  const std::size_t rcount = A.size();
  for (std::size_t t = 0; t < std::min(rcount, n); ++t) {
    std::size_t bi = npos, bj = npos;
    int bv = e;
    for (std::size_t i = t; i < rcount; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        int v = valuation(A[i][j], p, e);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == npos) break;
    std::swap(A[t], A[bi]);
    if (bj != t) {
      for (auto& r : A) std::swap(r[t], r[bj]);
      for (auto& r : out.V) std::swap(r[t], r[bj]);
      std::swap(out.V_inv[t], out.V_inv[bj]);
    }
    const Int pv = power(p, bv);
    const Int u = A[t][t] / pv;
    const Int w = unit_inverse(u, q);
    for (auto& r : A) r[t] = mul_mod(r[t], w, q);
    for (auto& r : out.V) r[t] = mul_mod(r[t], w, q);
    out.V_inv[t] = scaled(out.V_inv[t], u, q);

    for (std::size_t i = t + 1; i < rcount; ++i) {
      if (A[i][t] != 0) axpy(A[i], A[i][t] / pv, A[t], q);
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (A[t][j] == 0) continue;
      const Int k = A[t][j] / pv;
      for (auto& r : A) r[j] = mod(r[j] - mul_mod(k, r[t], q), q);
      for (auto& r : out.V) r[j] = mod(r[j] - mul_mod(k, r[t], q), q);
      for (std::size_t c = 0; c < n; ++c) {
        out.V_inv[t][c] = mod(out.V_inv[t][c] + mul_mod(k, out.V_inv[j][c], q), q);
      }
    }
    out.valuations[t] = bv;
  }
  return out;
}

Layout::Layout(std::vector<Cyclic> gens) : gens_(std::move(gens)) {
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    const auto& g = gens_[j];
    if (!is_prime(g.p) || g.e < 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "cyclic generator needs a prime and a positive exponent");
    }
    auto it = std::find_if(blocks_.begin(), blocks_.end(),
                           [&](const Block& b) { return b.p == g.p; });
    if (it == blocks_.end()) {
      blocks_.push_back(Block{g.p, g.e, {j}});
    } else {
      it->top = std::max(it->top, g.e);
      it->index.push_back(j);
    }
  }
}

int Layout::length() const noexcept {
  int len = 0;
  for (const auto& g : gens_) len += g.e;
  return len;
}

std::size_t Layout::cardinality(std::size_t cap) const {
  std::size_t n = 1;
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    const auto ord = static_cast<std::size_t>(order_of(j));
    if (n > cap / ord) return 0;
    n *= ord;
  }
  return n;
}

Vec Layout::reduce(Vec x) const {
  for (std::size_t j = 0; j < gens_.size(); ++j) x[j] = mod(x[j], order_of(j));
  return x;
}

bool Layout::is_zero(const Vec& x) const {
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    if (mod(x[j], order_of(j)) != 0) return false;
  }
  return true;
}

Vec Layout::add(const Vec& x, const Vec& y) const {
  Vec z(size());
  for (std::size_t j = 0; j < size(); ++j) z[j] = mod(x[j] + y[j], order_of(j));
  return z;
}

Vec Layout::scale(const Vec& x, Int c) const {
  Vec z(size());
  for (std::size_t j = 0; j < size(); ++j) z[j] = mul_mod(x[j], c, order_of(j));
  return z;
}

Vec Layout::apply(const Vec& x, const Mat& A) const {
  Vec y(size(), 0);
  for (std::size_t l = 0; l < size(); ++l) {
    const Int ord = order_of(l);
    Int acc = 0;
    for (std::size_t j = 0; j < size(); ++j) {
      if (x[j] != 0 && A[j][l] != 0) acc = mod(acc + mul_mod(x[j], A[j][l], ord), ord);
    }
    y[l] = acc;
  }
  return y;
}

Vec Layout::image(const Vec& x, const Mat& P) const {
  Vec y(size(), 0);
  for (std::size_t l = 0; l < size(); ++l) {
    const Int ord = order_of(l);
    Int acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] != 0 && P[j][l] != 0) acc = mod(acc + mul_mod(x[j], P[j][l], ord), ord);
    }
    y[l] = acc;
  }
  return y;
}

Vec Layout::embed(std::size_t block, const Vec& x, int top) const {
  const auto& b = blocks_[block];
  const Int q = power(b.p, top);
  Vec y(b.index.size());
  for (std::size_t t = 0; t < b.index.size(); ++t) {
    const auto& g = gens_[b.index[t]];
    y[t] = mul_mod(mod(x[b.index[t]], power(g.p, g.e)), power(g.p, top - g.e), q);
  }
  return y;
}

Vec Layout::restore(std::size_t block, const Vec& y, int top) const {
  const auto& b = blocks_[block];
  Vec x(size(), 0);
  for (std::size_t t = 0; t < b.index.size(); ++t) {
    const auto& g = gens_[b.index[t]];
    const Int shift = power(g.p, top - g.e);
    assert(y[t] % shift == 0);
    x[b.index[t]] = mod(y[t] / shift, power(g.p, g.e));
  }
  return x;
}

Span make_span(const Layout& layout, std::vector<Mat> howell_rows) {
  Span s;
  s.length_ = 0;
  for (std::size_t b = 0; b < layout.blocks().size(); ++b) {
    const auto& blk = layout.blocks()[b];
    s.length_ += pivot_length(howell_rows[b], blk.p, blk.top);
  }
  s.rows_ = std::move(howell_rows);
  return s;
}

Span span(const Layout& layout, const Mat& gens) {
  std::vector<Mat> rows(layout.blocks().size());
  for (std::size_t b = 0; b < layout.blocks().size(); ++b) {
    const auto& blk = layout.blocks()[b];
    Mat emb;
    emb.reserve(gens.size());
    for (const auto& g : gens) emb.push_back(layout.embed(b, g, blk.top));
    rows[b] = howell_form(std::move(emb), blk.p, blk.top);
  }
  return make_span(layout, std::move(rows));
}

Span zero_span(const Layout& layout) {
  return make_span(layout, std::vector<Mat>(layout.blocks().size()));
}

Span full_span(const Layout& layout) {
  Mat gens;
  for (std::size_t j = 0; j < layout.size(); ++j) {
    Vec u(layout.size(), 0);
    u[j] = 1;
    gens.push_back(std::move(u));
  }
  return span(layout, gens);
}

Span sum(const Layout& layout, const Span& a, const Span& b) {
  std::vector<Mat> rows(layout.blocks().size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& blk = layout.blocks()[k];
    Mat all = a.rows()[k];
    all.insert(all.end(), b.rows()[k].begin(), b.rows()[k].end());
    rows[k] = howell_form(std::move(all), blk.p, blk.top);
  }
  return make_span(layout, std::move(rows));
}

Span intersect(const Layout& layout, const Span& a, const Span& b) {
  std::vector<Mat> rows(layout.blocks().size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& blk = layout.blocks()[k];
    const std::size_t w = blk.index.size();
    Mat big;
    for (const auto& r : a.rows()[k]) {
      Vec row(r);
      row.insert(row.end(), r.begin(), r.end());
      big.push_back(std::move(row));
    }
    for (const auto& r : b.rows()[k]) {
      Vec row(r);
      row.insert(row.end(), w, 0);
      big.push_back(std::move(row));
    }
    Mat h = howell_form(std::move(big), blk.p, blk.top);
    Mat out;
    for (const auto& r : h) {
      if (std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(w),
                      [](Int x) { return x == 0; })) {
        out.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(w), r.end());
      }
    }
    rows[k] = howell_form(std::move(out), blk.p, blk.top);
  }
  return make_span(layout, std::move(rows));
}

namespace {

bool block_contains(const Mat& rows, Vec y, Int p, int top) {
  const Int q = power(p, top);
  for (const auto& r : rows) {
    std::size_t c = 0;
    while (r[c] == 0) ++c;
    const Int pv = r[c];
    if (y[c] % pv != 0) return false;
    axpy(y, y[c] / pv, r, q);
  }
  return is_zero_vec(y);
}

}  // namespace

bool contains(const Layout& layout, const Span& s, const Vec& x) {
  for (std::size_t k = 0; k < layout.blocks().size(); ++k) {
    const auto& blk = layout.blocks()[k];
    if (!block_contains(s.rows()[k], layout.embed(k, x, blk.top), blk.p, blk.top)) return false;
  }
  return true;
}

bool includes(const Layout& layout, const Span& outer, const Span& inner) {
  if (inner.length() > outer.length()) return false;
  for (std::size_t k = 0; k < layout.blocks().size(); ++k) {
    const auto& blk = layout.blocks()[k];
    for (const auto& r : inner.rows()[k]) {
      if (!block_contains(outer.rows()[k], r, blk.p, blk.top)) return false;
    }
  }
  return true;
}

Mat generators(const Layout& layout, const Span& s) {
  Mat out;
  for (std::size_t k = 0; k < layout.blocks().size(); ++k) {
    for (const auto& r : s.rows()[k]) out.push_back(layout.restore(k, r, layout.blocks()[k].top));
  }
  return out;
}

Span close(const Layout& layout, Span s, const std::vector<Mat>& actions) {
  for (;;) {
    Mat gens = generators(layout, s);
    const std::size_t n = gens.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& A : actions) gens.push_back(layout.apply(gens[i], A));
    }
    Span next = span(layout, gens);
    if (next.length() == s.length()) return next;
    s = std::move(next);
  }
}

Span kernel(const Layout& domain, const Mat& dom_gens, const Layout& target,
            const Mat& images) {
  std::vector<Mat> rows(domain.blocks().size());
  for (std::size_t b = 0; b < domain.blocks().size(); ++b) {
    const auto& blk = domain.blocks()[b];
    std::size_t tb = npos;
    for (std::size_t k = 0; k < target.blocks().size(); ++k) {
      if (target.blocks()[k].p == blk.p) tb = k;
    }
    const int top = tb == npos ? blk.top : std::max(blk.top, target.blocks()[tb].top);
    const std::size_t tw = tb == npos ? 0 : target.blocks()[tb].index.size();
    Mat big;
    for (std::size_t i = 0; i < dom_gens.size(); ++i) {
      Vec row = tb == npos ? Vec{} : target.embed(tb, images[i], top);
      Vec d = domain.embed(b, dom_gens[i], top);
      row.insert(row.end(), d.begin(), d.end());
      big.push_back(std::move(row));
    }
    Mat h = howell_form(std::move(big), blk.p, top);
    Mat ker;
    for (const auto& r : h) {
      if (std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(tw),
                      [](Int x) { return x == 0; })) {
        Vec y(r.begin() + static_cast<std::ptrdiff_t>(tw), r.end());
        ker.push_back(domain.embed(b, domain.restore(b, y, top), blk.top));
      }
    }
    rows[b] = howell_form(std::move(ker), blk.p, blk.top);
  }
  return make_span(domain, std::move(rows));
}

SubgroupBasis basis_of(const Layout& layout, const Span& s) {
  SubgroupBasis out;
  std::vector<Cyclic> pieces;
  for (std::size_t b = 0; b < layout.blocks().size(); ++b) {
    const auto& blk = layout.blocks()[b];
    const auto& H = s.rows()[b];
    if (H.empty()) continue;
    const std::size_t w = blk.index.size();
    const Int q = power(blk.p, blk.top);
    SmithForm sf = smith_form(H, w, blk.p, blk.top);
    SubgroupBasis::BlockData bd{b, sf.V, sf.valuations, std::vector<std::size_t>(w, npos)};
    for (std::size_t t = 0; t < w; ++t) {
      const int v = sf.valuations[t];
      if (v >= blk.top) continue;
      Vec elem = scaled(sf.V_inv[t], power(blk.p, v), q);
      bd.out[t] = pieces.size();
      pieces.push_back(Cyclic{blk.p, blk.top - v});
      out.elements.push_back(layout.restore(b, elem, blk.top));
    }
    out.data.push_back(std::move(bd));
  }
  out.layout = Layout(std::move(pieces));
  return out;
}

Vec coordinates(const Layout& layout, const SubgroupBasis& basis, const Vec& x) {
  Vec c(basis.layout.size(), 0);
  for (const auto& bd : basis.data) {
    const auto& blk = layout.blocks()[bd.block];
    const Int q = power(blk.p, blk.top);
    const Vec y = layout.embed(bd.block, x, blk.top);
    const std::size_t w = y.size();
    for (std::size_t t = 0; t < w; ++t) {
      if (bd.out[t] == npos) continue;
      Int acc = 0;
      for (std::size_t i = 0; i < w; ++i) acc = mod(acc + mul_mod(y[i], bd.V[i][t], q), q);
      const Int pv = power(blk.p, bd.valuations[t]);
      c[bd.out[t]] = mod(acc / pv, power(blk.p, blk.top - bd.valuations[t]));
    }
  }
  return c;
}

QuotientData quotient(const Layout& layout, const Span& s) {
  std::vector<Cyclic> pieces;
  std::vector<std::pair<Vec, Vec>> cols;  // (projection column, lift row)
  for (std::size_t b = 0; b < layout.blocks().size(); ++b) {
    const auto& blk = layout.blocks()[b];
    const std::size_t w = blk.index.size();
    Mat rel;
    for (const auto& r : s.rows()[b]) {
      Vec x = layout.restore(b, r, blk.top);
      Vec local(w);
      for (std::size_t t = 0; t < w; ++t) local[t] = x[blk.index[t]];
      rel.push_back(std::move(local));
    }
    for (std::size_t t = 0; t < w; ++t) {
      const auto& g = layout[blk.index[t]];
      if (g.e < blk.top) {
        Vec u(w, 0);
        u[t] = power(g.p, g.e);
        rel.push_back(std::move(u));
      }
    }
    SmithForm sf = smith_form(rel, w, blk.p, blk.top);
    for (std::size_t t = 0; t < w; ++t) {
      const int v = sf.valuations[t];
      if (v == 0) continue;
      const Int qv = power(blk.p, v);
      Vec pcol(layout.size(), 0), lift(layout.size(), 0);
      for (std::size_t i = 0; i < w; ++i) {
        pcol[blk.index[i]] = mod(sf.V[i][t], qv);
        lift[blk.index[i]] = mod(sf.V_inv[t][i], layout.order_of(blk.index[i]));
      }
      pieces.push_back(Cyclic{blk.p, v});
      cols.emplace_back(std::move(pcol), std::move(lift));
    }
  }
  QuotientData out;
  out.layout = Layout(std::move(pieces));
  out.projection.assign(layout.size(), Vec(cols.size(), 0));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t j = 0; j < layout.size(); ++j) out.projection[j][c] = cols[c].first[j];
    out.lift.push_back(cols[c].second);
  }
  return out;
}

void for_each_element(const Layout& layout, const std::function<void(const Vec&)>& visit) {
  Vec x(layout.size(), 0);
  for (;;) {
    visit(x);
    std::size_t j = 0;
    while (j < x.size()) {
      if (++x[j] < layout.order_of(j)) break;
      x[j] = 0;
      ++j;
    }
    if (j == x.size()) return;
  }
}

LatticeData enumerate_invariant(const Layout& layout, const std::vector<Mat>& actions,
                                std::size_t limit, std::size_t element_budget) {
  if (layout.cardinality(element_budget) == 0) {
    throw Error(ErrorCode::BudgetExceeded,
                "module has more than " + std::to_string(element_budget) + " elements", 0);
  }
  const Span zero = zero_span(layout);

  std::set<Span> cyclic_set;
  for_each_element(layout, [&](const Vec& x) {
    if (layout.is_zero(x)) return;
    cyclic_set.insert(close(layout, span(layout, {x}), actions));
  });
  const std::vector<Span> cyclics(cyclic_set.begin(), cyclic_set.end());

  std::set<Span> seen{zero};
  std::map<Span, std::set<Span>> up;
  std::deque<Span> queue{zero};
  while (!queue.empty()) {
    Span s = std::move(queue.front());
    queue.pop_front();
    auto& covers = up[s];
    for (const auto& c : cyclics) {
      if (includes(layout, s, c)) continue;
      Span t = sum(layout, s, c);
      if (t.length() == s.length() + 1) covers.insert(t);
      if (seen.insert(t).second) {
        if (seen.size() > limit) {
          throw Error(ErrorCode::BudgetExceeded,
                      "more than " + std::to_string(limit) + " invariant subgroups", seen.size());
        }
        queue.push_back(std::move(t));
      }
    }
  }

  LatticeData out;
  out.nodes.assign(seen.begin(), seen.end());
  auto index_of = [&](const Span& s) {
    return static_cast<std::size_t>(std::lower_bound(out.nodes.begin(), out.nodes.end(), s) -
                                    out.nodes.begin());
  };
  for (const auto& [lo, his] : up) {
    const std::size_t i = index_of(lo);
    for (const auto& hi : his) out.covers.emplace_back(i, index_of(hi));
  }
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

}  // namespace modlat::zp
