#include "modlat/oracle.hpp"

#include <bit>
#include <queue>
#include <set>
#include <stdexcept>

namespace modlat::oracle {

namespace {

Int reduce(Int a, Int n) {
  a %= n;
  return a < 0 ? a + n : a;
}

}  // namespace

Group::Group(std::vector<Int> orders, std::size_t max_elements) : orders_(std::move(orders)) {
  for (Int o : orders_) {
    if (o < 1) throw std::invalid_argument("cyclic order must be positive");
    if (size_ > max_elements / static_cast<std::size_t>(o)) {
      throw std::length_error("group too large for brute force");
    }
    size_ *= static_cast<std::size_t>(o);
  }
}

std::size_t Group::index(const Vec& x) const {
  std::size_t i = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    i = i * static_cast<std::size_t>(orders_[j]) + static_cast<std::size_t>(reduce(x[j], orders_[j]));
  }
  return i;
}

Vec Group::element(std::size_t i) const {
  Vec x(orders_.size());
  for (std::size_t j = orders_.size(); j-- > 0;) {
    x[j] = static_cast<Int>(i % static_cast<std::size_t>(orders_[j]));
    i /= static_cast<std::size_t>(orders_[j]);
  }
  return x;
}

std::size_t Group::add(std::size_t a, std::size_t b) const {
  Vec x = element(a), y = element(b);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[j];
  return index(x);
}

std::size_t Group::apply(std::size_t a, const Mat& A) const {
  const Vec x = element(a);
  Vec out(orders_.size(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = reduce(out[l] + x[j] * reduce(A[j][l], orders_[l]), orders_[l]);
  }
  return index(out);
}

Bits Group::empty() const { return Bits((size_ + 63) / 64, 0); }

bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}
bool subset(const Bits& a, const Bits& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] & ~b[k]) return false;
  return true;
}

Bits Group::generated(const Mat& gens) const {
  Bits h = empty();
  std::vector<std::size_t> members{0};
  set(h, 0);
  for (const auto& g : gens) {
    const std::size_t gi = index(g);
    // Adjoin g: keep adding g to every member until nothing new appears.
    for (std::size_t k = 0; k < members.size(); ++k) {
      const std::size_t s = add(members[k], gi);
      if (!test(h, s)) {
        set(h, s);
        members.push_back(s);
      }
    }
  }
  return h;
}

std::vector<Bits> Group::all_subgroups() const {
  std::set<Bits> seen;
  std::queue<Bits> todo;
  Bits zero = empty();
  set(zero, 0);
  seen.insert(zero);
  todo.push(zero);
  while (!todo.empty()) {
    Bits h = todo.front();
    todo.pop();
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < size_; ++i)
      if (test(h, i)) members.push_back(i);
    for (std::size_t g = 0; g < size_; ++g) {
      if (test(h, g)) continue;
      Bits next = h;
      std::vector<std::size_t> cur = members;
      for (std::size_t k = 0; k < cur.size(); ++k) {
        const std::size_t s = add(cur[k], g);
        if (!test(next, s)) {
          set(next, s);
          cur.push_back(s);
        }
      }
      if (seen.insert(next).second) todo.push(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Bits> Group::invariant_subgroups(const std::vector<Mat>& actions) const {
  std::vector<std::vector<std::size_t>> table(actions.size(), std::vector<std::size_t>(size_));
  for (std::size_t a = 0; a < actions.size(); ++a)
    for (std::size_t i = 0; i < size_; ++i) table[a][i] = apply(i, actions[a]);
  std::vector<Bits> out;
  for (auto& h : all_subgroups()) {
    bool closed = true;
    for (std::size_t i = 0; i < size_ && closed; ++i) {
      if (!test(h, i)) continue;
      for (const auto& t : table)
        if (!test(h, t[i])) {
          closed = false;
          break;
        }
    }
    if (closed) out.push_back(std::move(h));
  }
  return out;
}

std::size_t count_homs(const Group& m, const std::vector<Mat>& m_actions, const Group& n,
                       const std::vector<Mat>& n_actions) {
  const std::size_t gens = m.orders().size();
  std::vector<std::vector<std::size_t>> ma(m_actions.size()), na(n_actions.size());
  for (std::size_t a = 0; a < m_actions.size(); ++a) {
    ma[a].resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) ma[a][i] = m.apply(i, m_actions[a]);
  }
  for (std::size_t a = 0; a < n_actions.size(); ++a) {
    na[a].resize(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) na[a][i] = n.apply(i, n_actions[a]);
  }
  std::size_t total = 1;
  for (std::size_t j = 0; j < gens; ++j) total *= n.size();

  std::size_t count = 0;
  std::vector<std::size_t> img(gens, 0);
  std::vector<std::size_t> f(m.size());
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t j = 0; j < gens; ++j) {
      img[j] = c % n.size();
      c /= n.size();
    }
    bool ok = true;
    // Generator g_j has order orders[j]; its image must be killed by it.
    for (std::size_t j = 0; j < gens && ok; ++j) {
      std::size_t acc = 0;
      for (Int k = 0; k < m.orders()[j]; ++k) acc = n.add(acc, img[j]);
      ok = acc == 0;
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Vec x = m.element(i);
      std::size_t acc = 0;
      for (std::size_t j = 0; j < gens; ++j)
        for (Int k = 0; k < x[j]; ++k) acc = n.add(acc, img[j]);
      f[i] = acc;
    }
    for (std::size_t a = 0; a < ma.size() && ok; ++a)
      for (std::size_t i = 0; i < m.size() && ok; ++i) ok = f[ma[a][i]] == na[a][f[i]];
    if (ok) ++count;
  }
  return count;
}

}  // namespace modlat::oracle

namespace modlat::oracle {

std::size_t count_monomials(std::size_t nvars, int d, const std::vector<std::vector<int>>& relations) {
  if (d <= 0) return 0;
  std::size_t count = 0;
  std::vector<int> e(nvars, 0);
  // Odometer over [0, d)^nvars, keeping vectors of total degree < d.
  while (true) {
    int deg = 0;
    for (int x : e) deg += x;
    if (deg < d) {
      bool killed = false;
      for (const auto& r : relations) {
        bool div = true;
        for (std::size_t k = 0; k < nvars; ++k) div = div && e[k] >= r[k];
        killed = killed || div;
      }
      if (!killed) ++count;
    }
    std::size_t i = 0;
    while (i < nvars && ++e[i] == d) e[i++] = 0;
    if (i == nvars) break;
  }
  return count;
}

}  // namespace modlat::oracle
