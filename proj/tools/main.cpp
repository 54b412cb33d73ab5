#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "modlat/classify.hpp"
#include "modlat/error.hpp"
#include "modlat/io.hpp"
#include "modlat/matlis.hpp"
#include "modlat/suite.hpp"
#include "modlat/tower.hpp"
#include "modlat/version.hpp"
#include "modlat/zmodule.hpp"
#include "report.hpp"

using namespace modlat;
using cli::Format;
using io::Json;

namespace {

struct Outcome {
  Json result = Json::object();
  std::optional<std::string> dot;
  int status = 0;  // 4 when the run found an invariant violation
};

Json spans_json(const zp::Layout& L, const std::vector<Submodule>& subs) {
  Json out = Json::array();
  for (const auto& s : subs) out.push_back(io::span_to_json(L, s.span()));
  return out;
}

Outcome do_classify(const FiniteModule& m, const cli::RunConfig& cfg) {
  const auto rep = classify(m, kDefaultNodeLimit, cfg.budget);
  Outcome o;
  const auto& L = m.layout();
  o.result = Json{{"module", m.describe()},
                  {"length", m.length()},
                  {"uniserial", rep.uniserial},
                  {"meager", rep.meager},
                  {"single_associated_prime", rep.single_associated_prime},
                  {"fast_path_agrees", rep.fast_path_agrees},
                  {"submodule_count", rep.submodule_count},
                  {"associated_primes", rep.associated},
                  {"atoms", spans_json(L, rep.atoms)},
                  {"chain", spans_json(L, rep.chain)}};
  if (rep.meager_witness) {
    o.result["meager_witness"] = Json{{"lower", io::span_to_json(L, rep.meager_witness->lower.span())},
                                      {"upper", io::span_to_json(L, rep.meager_witness->upper.span())},
                                      {"factor", rep.meager_witness->factor}};
  } else {
    o.result["meager_witness"] = nullptr;
  }
  if (!rep.fast_path_agrees) o.status = 4;
  return o;
}

Outcome do_lattice(const FiniteModule& m, const cli::RunConfig& cfg) {
  const auto lat = enumerate_submodules(m, kDefaultNodeLimit, cfg.budget);
  Outcome o;
  o.result = io::lattice_to_json(lat);
  o.result["module"] = m.describe();
  o.dot = io::lattice_to_dot(lat);
  return o;
}

Outcome do_ideals(const FiniteRing& R, const cli::RunConfig& cfg) {
  Json list = Json::array();
  if (R.is_local()) {
    for (const auto& I : enumerate_ideals(R.factor(0), kDefaultNodeLimit, cfg.budget))
      list.push_back(io::span_to_json(R.layout(), I.span()));
  } else {
    // Ideals of a product are the submodules of its regular module.
    const auto lat = enumerate_submodules(regular_module(R), kDefaultNodeLimit, cfg.budget);
    for (std::size_t i = 0; i < lat.size(); ++i) list.push_back(io::span_to_json(R.layout(), lat.node(i).span()));
  }
  const std::size_t count = list.size();
  Outcome o;
  o.result = Json{{"ring", R.describe()}, {"count", count}, {"ideals", std::move(list)}};
  return o;
}

Outcome do_matlis(const std::string& verb, const FiniteModule& m, const cli::RunConfig& cfg) {
  Outcome o;
  if (verb == "dual") {
    const auto cert = double_dual_certificate(m);
    o.result = Json{{"module", m.describe()},
                    {"length", m.length()},
                    {"dual_length", cert.dual.module.length()},
                    {"dual", io::module_to_json(cert.dual.module)},
                    {"evaluation_bijective", true},
                    {"evaluation_map", cert.witness}};
    return o;
  }
  if (verb == "zeta") {
    const auto cert = double_dual_certificate(m);
    const auto lat = enumerate_submodules(m, kDefaultNodeLimit, cfg.budget);
    const auto tlat = enumerate_submodules(cert.dual.module, kDefaultNodeLimit, cfg.budget);
    std::vector<std::size_t> targets;
    std::vector<Submodule> z;
    bool involution = true;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      z.push_back(zeta(cert.dual, lat.node(i)));
      targets.push_back(tlat.index_of(z.back().span()).value());
      involution = involution && zeta(cert.double_dual, z.back()) == evaluate(cert, lat.node(i));
    }
    bool reversing = true;
    for (std::size_t i = 0; i < lat.size(); ++i)
      for (std::size_t j = 0; j < lat.size(); ++j)
        reversing = reversing && lat.node(j).includes(lat.node(i)) == z[i].includes(z[j]);
    o.result = Json{{"module", m.describe()},
                    {"submodules", lat.size()},
                    {"dual_submodules", tlat.size()},
                    {"order_reversing", reversing},
                    {"involution", involution},
                    {"zeta", targets}};
    o.dot = io::matlis_pair_to_dot(lat, tlat, targets);
    if (!reversing || !involution || lat.size() != tlat.size()) o.status = 4;
    return o;
  }
  const auto rep = continuity_audit(m, kDefaultNodeLimit, cfg.budget);
  Json v = Json::array();
  for (const auto& x : rep.violations) v.push_back(Json{{"first", x.first}, {"second", x.second}, {"n", x.n}});
  o.result = Json{{"module", m.describe()},     {"submodules", rep.submodules}, {"pairs", rep.pairs},
                  {"comparisons", rep.comparisons}, {"max_n", rep.max_n},       {"violations", std::move(v)}};
  if (!rep.violations.empty()) o.status = 4;
  return o;
}

Outcome do_tower(const std::string& verb, const Tower& t, const cli::RunConfig& cfg, const std::string& module_spec) {
  Outcome o;
  o.result["spec"] = t.spec().text();
  o.result["depth"] = cfg.depth;
  if (verb == "hs") {
    const auto hs = hilbert_samuel_profile(t, cfg.depth);
    o.result["lengths"] = hs.lengths;
    o.result["krull_estimate"] = hs.krull_estimate;
  } else if (verb == "tree") {
    const auto tree = ideal_tree(t, cfg.depth, cfg.budget);
    o.result["tree"] = io::ideal_tree_to_json(tree);
    o.dot = io::ideal_tree_to_dot(tree);
  } else if (verb == "branching") {
    const auto tree = ideal_tree(t, cfg.depth, cfg.budget);
    const auto rep = branching_report(tree);
    Json hist = Json::object();
    for (const auto& [deg, n] : rep.histogram) hist[std::to_string(deg)] = n;
    o.result["verdict"] = to_string(rep.verdict);
    o.result["level_sizes"] = tree.level_sizes();
    o.result["branching_per_level"] = rep.branching_per_level;
    o.result["min_degree"] = rep.min_degree;
    o.result["leaf_count"] = rep.leaf_count;
    o.result["degree_histogram"] = std::move(hist);
    o.dot = io::ideal_tree_to_dot(tree);
  } else if (verb == "pairgrowth") {
    o.result["counts"] = pair_growth(t, cfg.depth, cfg.budget);
  } else {
    const auto spec = parse_module_spec(module_spec);
    const auto r = predict_cardinality(t, spec, cfg.depth, cfg.budget);
    o.result["module"] = spec.text();
    o.result["cardinality"] = r.value.to_string();
    o.result["reason"] = to_string(r.tag);
    o.result["krull_estimate"] = r.krull_estimate;
  }
  return o;
}

Outcome do_zmod(const std::string& verb, const MinimaxDescriptor& d, Int prime, int level, const cli::RunConfig& cfg) {
  Outcome o;
  o.result["descriptor"] = d.text();
  if (verb == "decide") {
    const auto u = uniserial_z(d);
    o.result["minimax"] = is_minimax(d);
    o.result["meager"] = is_meager_z(d);
    o.result["uniserial"] = u.uniserial;
    o.result["uniserial_case"] = u.tag ? Json(to_string(*u.tag)) : Json(nullptr);
    o.result["count"] = count_submodules(d).to_string();
    o.result["artinian_quotient"] = is_minimax(d) ? Json(artinian_quotient(d).text()) : Json(nullptr);
  } else if (verb == "count") {
    o.result["count"] = count_submodules(d).to_string();
  } else if (verb == "length") {
    o.result["ordinal_length"] = ordinal_length_class(d).to_string();
  } else {
    const auto r = truncation_crosscheck(d, prime, level, kDefaultNodeLimit, cfg.budget);
    o.result["prime"] = r.p;
    o.result["level"] = r.level;
    o.result["model"] = r.model_text;
    o.result["count"] = r.count;
    o.result["uniserial"] = r.uniserial;
    o.result["meager"] = r.meager;
    o.result["verdict"] = r.verdict.to_string();
    o.result["claim"] = to_string(r.claim);
    o.result["expected"] = r.expected;
    o.result["consistent"] = r.consistent;
    if (!r.consistent) o.status = 4;
  }
  return o;
}

Outcome do_suite(const std::string& corpus, bool with_acceptance, bool serial, bool timing, const cli::RunConfig& cfg) {
  std::vector<suite::CheckResult> checks;
  if (corpus.empty() || with_acceptance) {
    suite::SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.parallel = !serial;
    checks = suite::run_acceptance(opt);
  }
  if (!corpus.empty()) {
    const int offset = static_cast<int>(checks.size());
    for (auto& r : suite::run_corpus(corpus)) {
      r.id += offset;
      checks.push_back(std::move(r));
    }
  }
  Outcome o;
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& r : checks) {
    Json item{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    if (timing) item["seconds"] = r.seconds;
    list.push_back(std::move(item));
    if (!r.passed) ++failed;
  }
  o.result = Json{{"checks_run", checks.size()}, {"failed", failed}, {"checks", std::move(list)}};
  if (failed > 0) o.status = 4;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submodule lattices, Matlis duality and truncation towers over finite rings", "modlat"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  cli::RunConfig cfg;
  cfg.budget = kDefaultElementBudget;
  cfg.depth = 4;
  cfg.seed = 20240917;
  std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"dot", Format::Dot}};
  app.add_option("--budget", cfg.budget, "Largest group enumerated element by element")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "Tower depth")->check(CLI::Range(1, 64));
  app.add_option("--seed", cfg.seed, "Seed for randomized corpora");
  app.add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--out", cfg.out, "Write the report to this file");

  std::string module_path, ring_path, spec_text, module_spec = "regular", descriptor, corpus;
  Int prime = 2;
  int level = 4;
  bool with_acceptance = false, serial = false, timing = false;

  auto* classify_cmd = app.add_subcommand("classify", "Uniserial, meager and atom report for a module");
  classify_cmd->add_option("--module", module_path, "Module file")->required();
  auto* lattice_cmd = app.add_subcommand("lattice", "Submodule lattice of a module");
  lattice_cmd->add_option("--module", module_path, "Module file")->required();
  auto* ideals_cmd = app.add_subcommand("ideals", "Ideals of a local ring");
  ideals_cmd->add_option("--ring", ring_path, "Ring file")->required();

  auto* matlis_cmd = app.add_subcommand("matlis", "Matlis duality");
  matlis_cmd->require_subcommand(1);
  for (const char* v : {"dual", "zeta", "audit"})
    matlis_cmd->add_subcommand(v)->add_option("--module", module_path, "Module file")->required();

  auto* tower_cmd = app.add_subcommand("tower", "Truncation towers");
  tower_cmd->require_subcommand(1);
  for (const char* v : {"hs", "tree", "branching", "pairgrowth", "predict"}) {
    auto* sub = tower_cmd->add_subcommand(v);
    sub->add_option("--spec", spec_text, "Tower spec text or JSON file")->required();
    if (std::string(v) == "predict") sub->add_option("--module-spec", module_spec, "regular, square, quotient(...)");
  }

  auto* zmod_cmd = app.add_subcommand("zmod", "Symbolic abelian groups");
  zmod_cmd->require_subcommand(1);
  for (const char* v : {"decide", "count", "length", "crosscheck"}) {
    auto* sub = zmod_cmd->add_subcommand(v);
    sub->add_option("--desc", descriptor, "Descriptor, e.g. \"Z + Z/8 + Prufer(3)\"")->required();
    if (std::string(v) == "crosscheck") {
      sub->add_option("--prime", prime, "Prime of the truncation");
      sub->add_option("--level", level, "Truncation level k")->check(CLI::Range(1, 30));
    }
  }

  auto* suite_cmd = app.add_subcommand("suite", "Acceptance battery and check corpus");
  suite_cmd->require_subcommand(1);
  auto* suite_run = suite_cmd->add_subcommand("run", "Run the acceptance battery, or a corpus when given");
  suite_run->add_option("--corpus", corpus, "Directory of JSON check files");
  suite_run->add_flag("--with-acceptance", with_acceptance, "Also run the acceptance battery with --corpus");
  suite_run->add_flag("--serial", serial, "Run checks one after another");
  suite_run->add_flag("--timing", timing, "Include wall-clock seconds in the report");

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* verb : sub->get_subcommands({})) verb->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    cfg.command = cmd->get_name();
    const auto verbs = cmd->get_subcommands();
    cfg.verb = verbs.empty() ? "" : verbs.front()->get_name();

    Outcome o;
    if (cfg.command == "classify" || cfg.command == "lattice" || cfg.command == "matlis") {
      cfg.inputs["module"] = module_path;
      const FiniteModule m = io::load_module(module_path);
      if (cfg.command == "classify") o = do_classify(m, cfg);
      else if (cfg.command == "lattice") o = do_lattice(m, cfg);
      else o = do_matlis(cfg.verb, m, cfg);
    } else if (cfg.command == "ideals") {
      cfg.inputs["ring"] = ring_path;
      o = do_ideals(io::load_ring(ring_path), cfg);
    } else if (cfg.command == "tower") {
      cfg.inputs["spec"] = spec_text;
      if (cfg.verb == "predict") cfg.inputs["module_spec"] = module_spec;
      o = do_tower(cfg.verb, make_tower(io::load_tower_spec(spec_text)), cfg, module_spec);
    } else if (cfg.command == "zmod") {
      cfg.inputs["descriptor"] = Json::array({descriptor});
      if (cfg.verb == "crosscheck") cfg.inputs["truncation"] = Json::array({prime, level});
      o = do_zmod(cfg.verb, parse_descriptor(descriptor), prime, level, cfg);
    } else {
      cfg.inputs["corpus"] = Json::array({corpus, with_acceptance});
      o = do_suite(corpus, with_acceptance, serial, timing, cfg);
    }
    cli::emit(cfg, cli::render(cfg, o.result, o.dot));
    return o.status;
  } catch (const Error& e) {
    std::cerr << "modlat: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "modlat: ParseError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "modlat: " << e.what() << "\n";
    return 1;
  }
}
