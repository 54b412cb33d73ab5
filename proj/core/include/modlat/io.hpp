#pragma once

// JSON file formats for rings, modules and tower specs, canonical
// serialization of subgroups, and DOT export of lattices and ideal trees.
// The formats are documented in docs/formats.md.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "modlat/module.hpp"
#include "modlat/tower.hpp"

namespace modlat::io {

using Json = nlohmann::ordered_json;

/// Throws ParseError naming the path, line and column.
Json load_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& origin);

FiniteRing ring_from_json(const Json& j, const std::filesystem::path& base = {});
FiniteRing load_ring(const std::filesystem::path& path);
Json ring_to_json(const FiniteRing& ring);

/// `ring` may be omitted only when `ring_hint` is given (summands of a sum).
FiniteModule module_from_json(const Json& j, const std::filesystem::path& base = {},
                              const std::optional<FiniteRing>& ring_hint = std::nullopt);
FiniteModule load_module(const std::filesystem::path& path);
/// Explicit form: orders plus one action matrix per ring basis element.
Json module_to_json(const FiniteModule& m);

/// A string is a file path relative to `base` when such a file exists, otherwise spec text.
TowerSpec tower_from_json(const Json& j, const std::filesystem::path& base = {});
Json tower_to_json(const TowerSpec& spec);
/// `arg` is a JSON file when such a file exists, otherwise spec text.
TowerSpec load_tower_spec(const std::string& arg);

/// Canonical rows of a subgroup in natural coordinates.
Json span_to_json(const zp::Layout& layout, const zp::Span& s);
/// Counts per length, nodes and Hasse covers.
Json lattice_to_json(const SubmoduleLattice& lattice);
std::string lattice_to_dot(const SubmoduleLattice& lattice, const std::string& name = "lattice");

Json ideal_tree_to_json(const IdealTree& tree);
std::string ideal_tree_to_dot(const IdealTree& tree);

/// Sub(M) and Sub(T(M)) side by side; zeta_targets[i] is the node of the
/// second lattice that node i of the first maps to.
std::string matlis_pair_to_dot(const SubmoduleLattice& sub_m, const SubmoduleLattice& sub_t,
                               const std::vector<std::size_t>& zeta_targets);

std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace modlat::io
