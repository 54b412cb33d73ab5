#include <algorithm>
#include <chrono>

#include "modlat/classify.hpp"
#include "modlat/error.hpp"
#include "modlat/io.hpp"
#include "modlat/matlis.hpp"
#include "modlat/suite.hpp"
#include "modlat/zmodule.hpp"

namespace modlat::suite {

namespace {

using io::Json;
namespace fs = std::filesystem;

std::string expect_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

/// Returns "" on success, otherwise what differed.
std::string run_one(const Json& check, const fs::path& base) {
  const std::string kind = check.at("check").get<std::string>();
  const Json& expect = check.at("expect");
  auto differs = [&](const std::string& got) {
    return got == expect_text(expect) ? std::string() : "expected " + expect_text(expect) + ", got " + got;
  };
  auto depth = [&] { return check.value("depth", 4); };

  if (kind == "submodule_count") {
    const auto m = io::module_from_json(check.at("module"), base);
    return differs(std::to_string(enumerate_submodules(m).size()));
  }
  if (kind == "ideal_count") {
    const auto R = io::ring_from_json(check.at("ring"), base);
    if (!R.is_local()) return "ideal_count needs a local ring";
    return differs(std::to_string(enumerate_ideals(R.factor(0)).size()));
  }
  if (kind == "classify") {
    const auto rep = classify(io::module_from_json(check.at("module"), base));
    const Json got{{"uniserial", rep.uniserial}, {"meager", rep.meager}};
    return got == expect ? std::string() : "expected " + expect.dump() + ", got " + got.dump();
  }
  if (kind == "double_dual") {
    const auto m = io::module_from_json(check.at("module"), base);
    double_dual_certificate(m);
    return differs(std::to_string(matlis_dual(m).module.length()));
  }
  if (kind == "hs_estimate") {
    const auto t = make_tower(io::tower_from_json(check.at("tower"), base));
    return differs(std::to_string(hilbert_samuel_profile(t, depth()).krull_estimate));
  }
  if (kind == "branching") {
    const auto t = make_tower(io::tower_from_json(check.at("tower"), base));
    return differs(to_string(branching_report(ideal_tree(t, depth())).verdict));
  }
  if (kind == "zmod_count") {
    return differs(count_submodules(parse_descriptor(check.at("descriptor").get<std::string>())).to_string());
  }
  if (kind == "predict") {
    const auto t = make_tower(io::tower_from_json(check.at("tower"), base));
    const auto r = predict_cardinality(t, parse_module_spec(check.at("module_spec").get<std::string>()), depth());
    return differs(r.value.to_string());
  }
  throw Error(ErrorCode::ParseError, "unknown check kind '" + kind + "'");
}

}  // namespace

std::vector<CheckResult> run_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::ParseError, dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<CheckResult> out;
  for (const auto& file : files) {
    const Json doc = io::load_json_file(file);
    // A file holds either one check or {"checks": [...]}; ring and module
    // definition files carry no "check" field and are skipped.
    std::vector<Json> checks;
    if (doc.is_object() && doc.contains("checks")) {
      for (const auto& c : doc.at("checks")) checks.push_back(c);
    } else if (doc.is_object() && doc.contains("check")) {
      checks.push_back(doc);
    }
    for (std::size_t i = 0; i < checks.size(); ++i) {
      CheckResult r;
      r.id = static_cast<int>(out.size()) + 1;
      r.name = checks[i].value("name", file.stem().string() + (checks.size() > 1 ? "#" + std::to_string(i) : ""));
      const auto start = std::chrono::steady_clock::now();
      try {
        r.detail = run_one(checks[i], file.parent_path());
        r.passed = r.detail.empty();
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw Error(ErrorCode::ParseError, file.string() + ": " + e.what());
        r.detail = e.what();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, file.string() + ": " + e.what());
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace modlat::suite
