#include "modlat/io.hpp"

#include <fstream>
#include <sstream>

#include "modlat/error.hpp"
#include "modlat/matlis.hpp"

namespace modlat::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) parse_fail(ctx + ": missing field '" + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const std::string& ctx) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    parse_fail(ctx + ": " + e.what());
  }
}

std::string kind_of(const Json& j, const std::string& ctx) {
  return get_as<std::string>(field(j, "kind", ctx), ctx + ".kind");
}

zp::Cyclic cyclic_of_order(Int q, const std::string& ctx) {
  if (q < 2) parse_fail(ctx + ": cyclic order must be >= 2");
  for (Int p = 2; p * p <= q || p == q; ++p) {
    if (q % p != 0) continue;
    int e = 0;
    Int r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) parse_fail(ctx + ": order " + std::to_string(q) + " is not a prime power");
    return {p, e};
  }
  return {q, 1};
}

Json rows_json(const Mat& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(r);
  return out;
}

std::string rows_label(const Mat& rows) {
  if (rows.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < rows[i].size(); ++j) s += (j ? " " : "") + std::to_string(rows[i][j]);
  }
  return s;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& rel) {
  std::filesystem::path p(rel);
  return p.is_absolute() || base.empty() ? p : base / p;
}

FiniteRing local_ring_from_json(const Json& j, const std::filesystem::path& base, const std::string& ctx);

FiniteRing ring_ref(const Json& j, const std::filesystem::path& base, const std::string& ctx) {
  if (j.is_string()) return load_ring(resolve(base, j.get<std::string>()));
  return local_ring_from_json(j, base, ctx);
}

FiniteRing local_ring_from_json(const Json& j, const std::filesystem::path& base, const std::string& ctx) {
  const std::string kind = kind_of(j, ctx);
  if (kind == "table") {
    const Int p = get_as<Int>(field(j, "p", ctx), ctx + ".p");
    const int exponent = j.contains("exponent") ? get_as<int>(j["exponent"], ctx + ".exponent") : 1;
    auto table = get_as<std::vector<std::vector<Vec>>>(field(j, "struct_consts", ctx), ctx + ".struct_consts");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = get_as<std::vector<std::string>>(j["labels"], ctx + ".labels");
    return LocalAlgebra::from_table(p, exponent, std::move(table), std::move(labels));
  }
  if (kind == "truncated_poly") {
    const Int p = get_as<Int>(field(j, "p", ctx), ctx + ".p");
    auto vars = get_as<std::vector<std::string>>(field(j, "vars", ctx), ctx + ".vars");
    const int cap = get_as<int>(field(j, "cap", ctx), ctx + ".cap");
    std::vector<std::string> rels;
    if (j.contains("relations")) rels = get_as<std::vector<std::string>>(j["relations"], ctx + ".relations");
    return truncated_polynomial_ring(p, vars, cap, rels);
  }
  if (kind == "zmod") return zmod_ring(get_as<Int>(field(j, "n", ctx), ctx + ".n"));
  if (kind == "product") {
    std::vector<LocalAlgebra> factors;
    const Json& fs = field(j, "factors", ctx);
    if (!fs.is_array() || fs.empty()) parse_fail(ctx + ".factors: expected a nonempty array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const FiniteRing f = ring_ref(fs[i], base, ctx + ".factors[" + std::to_string(i) + "]");
      factors.insert(factors.end(), f.factors().begin(), f.factors().end());
    }
    return FiniteRing(std::move(factors));
  }
  parse_fail(ctx + ": unknown ring kind '" + kind + "'");
}

Json local_to_json(const LocalAlgebra& R) {
  Json table = Json::array();
  for (std::size_t i = 0; i < R.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < R.dim(); ++k) row.push_back(R.basis_product(i, k));
    table.push_back(std::move(row));
  }
  return Json{{"kind", "table"}, {"p", R.p()}, {"exponent", R.exponent()}, {"labels", R.labels()},
              {"struct_consts", std::move(table)}};
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    parse_fail(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

FiniteRing ring_from_json(const Json& j, const std::filesystem::path& base) { return ring_ref(j, base, "ring"); }

FiniteRing load_ring(const std::filesystem::path& path) {
  return ring_ref(load_json_file(path), path.parent_path(), path.string());
}

Json ring_to_json(const FiniteRing& ring) {
  if (ring.is_local()) return local_to_json(ring.factor(0));
  Json fs = Json::array();
  for (const auto& f : ring.factors()) fs.push_back(local_to_json(f));
  return Json{{"kind", "product"}, {"factors", std::move(fs)}};
}

FiniteModule module_from_json(const Json& j, const std::filesystem::path& base,
                              const std::optional<FiniteRing>& ring_hint) {
  const std::string ctx = "module";
  if (j.is_string()) {
    const auto path = resolve(base, j.get<std::string>());
    return module_from_json(load_json_file(path), path.parent_path(), ring_hint);
  }
  std::optional<FiniteRing> ring = ring_hint;
  if (j.is_object() && j.contains("ring")) ring = ring_ref(j["ring"], base, ctx + ".ring");
  if (!ring) parse_fail(ctx + ": missing field 'ring'");
  const std::string kind = kind_of(j, ctx);
  const FiniteRing& R = *ring;

  if (kind == "regular") return regular_module(R);
  if (kind == "hull") return injective_hull(R);
  if (kind == "quotient") {
    Mat gens;
    if (j.contains("ideal")) gens = get_as<Mat>(j["ideal"], ctx + ".ideal");
    if (j.contains("monomials")) {
      if (!R.is_local() || R.factor(0).variables().empty()) parse_fail(ctx + ": monomials need a polynomial ring");
      const LocalAlgebra& A = R.factor(0);
      for (const auto& m : get_as<std::vector<std::string>>(j["monomials"], ctx + ".monomials")) {
        const auto exps = parse_monomial(A.variables(), m);
        Vec v(A.dim(), 0);
        for (std::size_t i = 0; i < A.dim(); ++i)
          if (A.monomials()[i] == exps) v[i] = 1;
        gens.push_back(v);
      }
    }
    for (const auto& g : gens)
      if (g.size() != R.dim()) parse_fail(ctx + ".ideal: generator has wrong length");
    return cyclic_quotient(product_ideal_span(R, gens));
  }
  if (kind == "direct_sum") {
    const Json& ss = field(j, "summands", ctx);
    if (!ss.is_array() || ss.empty()) parse_fail(ctx + ".summands: expected a nonempty array");
    std::vector<FiniteModule> parts;
    for (const auto& s : ss) parts.push_back(module_from_json(s, base, R));
    return direct_sum(parts);
  }
  if (kind == "dual") return matlis_dual(module_from_json(field(j, "of", ctx), base, R)).module;
  if (kind == "explicit") {
    std::vector<Int> orders;
    if (j.contains("orders")) {
      orders = get_as<std::vector<Int>>(j["orders"], ctx + ".orders");
    } else {
      if (!R.is_local()) parse_fail(ctx + ": 'dim' needs a local ring; give 'orders'");
      orders.assign(get_as<std::size_t>(field(j, "dim", ctx), ctx + ".dim"), R.factor(0).modulus());
    }
    std::vector<zp::Cyclic> gens;
    for (Int q : orders) gens.push_back(cyclic_of_order(q, ctx + ".orders"));
    auto actions = get_as<std::vector<Mat>>(field(j, "action", ctx), ctx + ".action");
    if (actions.size() != R.dim()) parse_fail(ctx + ".action: need one matrix per ring basis element");
    for (const auto& A : actions) {
      if (A.size() != gens.size()) parse_fail(ctx + ".action: matrix has wrong size");
      for (const auto& row : A)
        if (row.size() != gens.size()) parse_fail(ctx + ".action: matrix has wrong size");
    }
    return make_module(R, zp::Layout(gens), std::move(actions));
  }
  parse_fail(ctx + ": unknown module kind '" + kind + "'");
}

FiniteModule load_module(const std::filesystem::path& path) {
  return module_from_json(load_json_file(path), path.parent_path());
}

Json module_to_json(const FiniteModule& m) {
  std::vector<Int> orders;
  for (std::size_t j = 0; j < m.layout().size(); ++j) orders.push_back(m.layout().order_of(j));
  Json actions = Json::array();
  for (const auto& A : m.actions()) actions.push_back(rows_json(A));
  return Json{{"ring", ring_to_json(m.ring())}, {"kind", "explicit"}, {"orders", orders}, {"action", actions}};
}

TowerSpec tower_from_json(const Json& j, const std::filesystem::path& base) {
  const std::string ctx = "tower";
  if (j.is_string()) {
    const auto path = resolve(base, j.get<std::string>());
    std::error_code ec;
    if (std::filesystem::is_regular_file(path, ec)) return tower_from_json(load_json_file(path));
    return parse_tower_spec(j.get<std::string>());
  }
  if (j.is_object() && j.contains("spec")) return parse_tower_spec(get_as<std::string>(j["spec"], ctx + ".spec"));
  const std::string kind = kind_of(j, ctx);
  TowerSpec t;
  t.p = get_as<Int>(field(j, "p", ctx), ctx + ".p");
  if (kind == "padic") {
    t.kind = TowerSpec::Kind::PAdic;
  } else if (kind == "power_series") {
    t.vars = get_as<std::vector<std::string>>(field(j, "vars", ctx), ctx + ".vars");
    if (j.contains("relations")) t.relations = get_as<std::vector<std::string>>(j["relations"], ctx + ".relations");
  } else {
    parse_fail(ctx + ": unknown tower kind '" + kind + "'");
  }
  // Round-trip through the text grammar for validation.
  return parse_tower_spec(t.text());
}

Json tower_to_json(const TowerSpec& spec) {
  if (spec.kind == TowerSpec::Kind::PAdic) return Json{{"kind", "padic"}, {"p", spec.p}};
  return Json{{"kind", "power_series"}, {"p", spec.p}, {"vars", spec.vars}, {"relations", spec.relations}};
}

TowerSpec load_tower_spec(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return tower_from_json(load_json_file(arg));
  return parse_tower_spec(arg);
}

Json span_to_json(const zp::Layout& layout, const zp::Span& s) {
  return Json{{"length", s.length()}, {"rows", rows_json(zp::generators(layout, s))}};
}

Json lattice_to_json(const SubmoduleLattice& lattice) {
  const auto& L = lattice.module().layout();
  Json nodes = Json::array();
  for (const auto& s : lattice.spans()) nodes.push_back(span_to_json(L, s));
  Json covers = Json::array();
  for (const auto& [a, b] : lattice.covers()) covers.push_back({a, b});
  return Json{{"size", lattice.size()},
              {"counts_by_length", lattice.counts_by_length()},
              {"nodes", std::move(nodes)},
              {"covers", std::move(covers)}};
}

std::string lattice_to_dot(const SubmoduleLattice& lattice, const std::string& name) {
  std::ostringstream out;
  const auto& L = lattice.module().layout();
  out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& s = lattice.spans()[i];
    out << "  n" << i << " [label=\"#" << i << " len " << s.length() << "\\n"
        << dot_escape(rows_label(zp::generators(L, s))) << "\"];\n";
  }
  for (const auto& [a, b] : lattice.covers()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

Json ideal_tree_to_json(const IdealTree& tree) {
  Json levels = Json::array();
  for (std::size_t n = 0; n < tree.levels.size(); ++n) {
    Json nodes = Json::array();
    for (std::size_t i = 0; i < tree.levels[n].size(); ++i) {
      nodes.push_back(Json{{"parent", tree.parent[n][i]},
                           {"length", tree.levels[n][i].length()},
                           {"representative", tree.representatives[n][i]}});
    }
    levels.push_back(std::move(nodes));
  }
  return Json{{"depth", tree.depth}, {"level_sizes", tree.level_sizes()}, {"levels", std::move(levels)}};
}

std::string ideal_tree_to_dot(const IdealTree& tree) {
  std::ostringstream out;
  out << "digraph ideal_tree {\n  node [shape=circle, fontsize=9];\n";
  for (std::size_t n = 0; n < tree.levels.size(); ++n) {
    for (std::size_t i = 0; i < tree.levels[n].size(); ++i) {
      out << "  l" << n + 1 << "_" << i << " [label=\"" << tree.levels[n][i].length() << "\"];\n";
      if (n > 0) out << "  l" << n << "_" << tree.parent[n][i] << " -> l" << n + 1 << "_" << i << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string matlis_pair_to_dot(const SubmoduleLattice& sub_m, const SubmoduleLattice& sub_t,
                               const std::vector<std::size_t>& zeta_targets) {
  std::ostringstream out;
  out << "digraph matlis {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  auto cluster = [&](const SubmoduleLattice& lat, const char* prefix, const char* title) {
    out << "  subgraph cluster_" << prefix << " {\n    label=\"" << title << "\";\n";
    for (std::size_t i = 0; i < lat.size(); ++i)
      out << "    " << prefix << i << " [label=\"len " << lat.spans()[i].length() << "\"];\n";
    for (const auto& [a, b] : lat.covers()) out << "    " << prefix << a << " -> " << prefix << b << ";\n";
    out << "  }\n";
  };
  cluster(sub_m, "m", "Sub(M)");
  cluster(sub_t, "t", "Sub(T(M))");
  for (std::size_t i = 0; i < zeta_targets.size(); ++i)
    out << "  m" << i << " -> t" << zeta_targets[i] << " [style=dashed, color=gray, constraint=false];\n";
  out << "}\n";
  return out.str();
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
  return s;
}

}  // namespace modlat::io
