#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mpg/capacity.hpp"
#include "mpg/extended_real.hpp"
#include "mpg/game.hpp"
#include "mpg/integral.hpp"

namespace mpg::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// --- parsing ---------------------------------------------------------------
//
// All parsers reject unknown keys. "schema_version" (must be "1") and
// "player" are accepted everywhere the formats below allow them.

/// Raw capacity file: format-checked but not invariant-checked, so the
/// validate command can report every violation instead of failing fast.
struct RawCapacityFile {
  FiniteSpace space;
  std::optional<std::string> player;
  bool is_possibility = false;    // kind: "possibility" vs "general"
  std::vector<double> numbers;    // weights (possibility) or lattice values
};

RawCapacityFile parse_capacity_raw(const Json& j);

/// Invariant-checked capacity file. Possibility files stay as densities
/// (no lattice materialization), general files are validated capacities.
struct CapacityFile {
  std::optional<std::string> player;
  std::variant<Capacity, Density> value;

  bool is_possibility_file() const { return std::holds_alternative<Density>(value); }
  const FiniteSpace& space() const;
  /// Materializes possibility files through from_density (lattice cap applies).
  Capacity as_capacity() const;
};

CapacityFile parse_capacity_file(const Json& j);

RealFunction parse_function_file(const Json& j);

Game parse_game_file(const Json& j);

/// Orders capacity files by their "player" keys against the game's player
/// list, or positionally when no file carries one. Mixed usage is an error.
std::vector<CapacityFile> assign_to_players(std::vector<CapacityFile> files, const Game& g);

Json load_json_file(const std::string& path);

// --- serialization ----------------------------------------------------------

Json space_json(const FiniteSpace& space);
Json capacity_json(const Capacity& nu);      // kind: "general"
Json density_json(const Density& d);         // kind: "possibility"
Json extended_real_json(const ExtendedReal& v);  // number or "-inf"
Json validation_report_json(const ValidationReport& report, const FiniteSpace& space);

/// Deterministic writer: keys in insertion order, floats with 12
/// significant digits, 2-space indentation. Identical documents dump to
/// identical bytes.
std::string dump_deterministic(const Json& j, int indent = 2);

std::string format_double(double v);  // %.12g

}  // namespace mpg::io
