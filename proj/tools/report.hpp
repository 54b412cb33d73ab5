#pragma once

#include <optional>
#include <string>

#include "modlat/io.hpp"

namespace modlat::cli {

enum class Format { Text, Json, Dot };

struct RunConfig {
  std::string command;
  std::string verb;
  io::Json inputs = io::Json::object();
  std::size_t budget = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  Format format = Format::Text;
  std::string out;
};

/// Hash of the canonical JSON form of the configuration plus the contents of
/// every input file it names.
std::string config_hash(const RunConfig& cfg);

/// Wraps a result with tool version, config hash and seed, and renders it.
std::string render(const RunConfig& cfg, const io::Json& result, const std::optional<std::string>& dot);

/// Writes to cfg.out, or stdout when empty.
void emit(const RunConfig& cfg, const std::string& text);

}  // namespace modlat::cli
