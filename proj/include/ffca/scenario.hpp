#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ffca/grid.hpp"

namespace ffca {

class StaticField;

/// Global model parameters. The scenario-file keys are given next to each
/// field; all seven keys are required in a scenario file.
struct ModelParams {
  double k_sff = 0.0;         // k_S: drive toward the exit along the static field
  double k_people = 0.0;      // k_P: aversion to crowded directions
  double k_wall = 0.0;        // k_W: aversion to walls ahead
  int visibility = 1;         // r: how many cells an agent inspects along a ray
  double friction = 0.0;      // mu: chance a contested move is denied to everyone
  std::uint64_t seed = 0;     // seed
  std::int64_t max_steps = 1; // max_steps

  bool operator==(const ModelParams&) const = default;
};

/// Scenario-file keys, in the order they are serialized.
inline constexpr std::string_view kParamKeys[] = {"k_S", "k_P", "k_W", "r",
                                                  "mu",  "seed", "max_steps"};

bool is_param_key(std::string_view key);

/// Assigns one parameter from its textual value. Throws std::invalid_argument
/// for unknown keys, malformed numbers and out-of-range values.
void set_param(ModelParams& params, std::string_view key, std::string_view value);

/// Textual value of one parameter, formatted so that set_param() reads back
/// the identical value.
std::string get_param(const ModelParams& params, std::string_view key);

/// Soft constraints that experiments may deliberately break (k_P and k_W
/// below k_S). Returned as human-readable warnings, never errors.
std::vector<std::string> parameter_warnings(const ModelParams& params);

struct Scenario {
  Grid grid;
  std::vector<Cell> agents;
  ModelParams params;

  bool operator==(const Scenario&) const = default;
};

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(int line, int column, const std::string& what);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

struct MapLayout {
  Grid grid;
  std::vector<Cell> agents;
};

/// Parses a character map ('#' wall, '.' floor, 'E' exit, 'P' agent).
/// `first_line` is the 1-based line number of the first row in the enclosing
/// file and only affects error positions.
MapLayout parse_map(std::string_view text, int first_line = 1);

/// Parses a full scenario file: a `key = value` block, one blank line, then
/// the map. Throws ScenarioParseError with the offending line and column.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a scenario file. I/O failures throw std::runtime_error
/// mentioning the path.
Scenario load_scenario(const std::string& path);

/// Map glyphs for a grid with agents. An agent standing on an exit cell is
/// drawn as 'P'.
std::string render_map(const Grid& grid, const std::vector<Cell>& agents);

std::string serialize_scenario(const Scenario& scenario);

enum class ViolationKind {
  NoExit,
  OutOfBounds,
  ExitOnWall,
  OpenBorder,
  AgentOnWall,
  DuplicateAgent,
  UnreachableAgent,
};

struct Violation {
  ViolationKind kind;
  Cell cell;
  std::string message;
};

/// Checks every Scenario and Grid invariant, including reachability of each
/// agent under `field`. An empty result means the scenario is runnable.
std::vector<Violation> validate(const Scenario& scenario, const StaticField& field);

}  // namespace ffca
