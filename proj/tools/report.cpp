#include "report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "modlat/error.hpp"
#include "modlat/version.hpp"

namespace modlat::cli {

namespace {

std::string file_contents(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* format_name(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Json: return "json";
    case Format::Dot: return "dot";
  }
  return "?";
}

void render_text(std::ostringstream& out, const io::Json& j) {
  for (const auto& [key, value] : j.items()) {
    out << key << ": ";
    if (value.is_string()) out << value.get<std::string>();
    else out << value.dump();
    out << "\n";
  }
}

}  // namespace

std::string config_hash(const RunConfig& cfg) {
  io::Json canon{{"command", cfg.command}, {"verb", cfg.verb},   {"inputs", cfg.inputs},
                 {"budget", cfg.budget},   {"depth", cfg.depth}, {"seed", cfg.seed},
                 {"format", format_name(cfg.format)}};
  std::string data = canon.dump();
  for (const auto& [key, value] : cfg.inputs.items()) {
    if (value.is_string()) data += "\n" + key + "\n" + file_contents(value.get<std::string>());
  }
  return io::hex64(io::fnv1a(data));
}

std::string render(const RunConfig& cfg, const io::Json& result, const std::optional<std::string>& dot) {
  const std::string hash = config_hash(cfg);
  if (cfg.format == Format::Dot) {
    if (!dot) throw Error(ErrorCode::InvalidArgument, cfg.command + " " + cfg.verb + " has no DOT output");
    return "// modlat " + std::string(kVersion) + " config " + hash + " seed " + std::to_string(cfg.seed) + "\n" + *dot;
  }
  io::Json report{{"tool", "modlat"},
                  {"tool_version", kVersion},
                  {"command", cfg.verb.empty() ? cfg.command : cfg.command + " " + cfg.verb},
                  {"config_hash", hash},
                  {"seed", cfg.seed},
                  {"result", result}};
  if (cfg.format == Format::Json) return report.dump(2) + "\n";
  std::ostringstream out;
  out << "# modlat " << kVersion << "  " << report["command"].get<std::string>() << "  config " << hash << "  seed "
      << cfg.seed << "\n";
  render_text(out, result);
  return out.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
  f << text;
}

}  // namespace modlat::cli
