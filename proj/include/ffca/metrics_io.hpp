#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffca/floorfield.hpp"
#include "ffca/grid.hpp"
#include "ffca/transition.hpp"

namespace ffca {

/// Default snapshot steps.
inline const std::vector<std::int64_t> kDefaultSnapshotSteps = {25, 65, 135, 165, 180, 225};

/// Graymap levels used by render_snapshot().
inline constexpr std::uint8_t kGrayWall = 0;
inline constexpr std::uint8_t kGrayAgent = 64;
inline constexpr std::uint8_t kGrayExit = 128;
inline constexpr std::uint8_t kGrayEmpty = 255;

struct CurvePoint {
  std::int64_t step = 0;
  int remaining = 0;
  std::optional<double> spread;  // unset once the room is empty

  bool operator==(const CurvePoint&) const = default;
};

struct RenderedSnapshot {
  std::string ascii;  // one map row per line, same glyphs as scenario files
  std::string pgm;    // binary portable graymap (P5)

  bool operator==(const RenderedSnapshot&) const = default;
};

struct SnapshotRecord {
  std::int64_t step = 0;
  RenderedSnapshot raster;

  bool operator==(const SnapshotRecord&) const = default;
};

/// One agent's move distribution at a traced step.
struct AgentDistribution {
  std::int64_t step = 0;
  int agent_id = 0;
  Cell cell;
  TransitionDistribution distribution;
};

struct SimulationResult {
  int initial_agents = 0;
  std::int64_t steps_run = 0;
  /// One entry per executed step, recorded after exit removal.
  std::vector<CurvePoint> evac_curve;
  /// First step with nobody left; unset when max_steps ran out first.
  std::optional<std::int64_t> evac_time;
  std::vector<SnapshotRecord> snapshots;
  std::vector<AgentDistribution> distributions;

  bool complete() const { return evac_time.has_value(); }
  /// Spread recorded at `step`, if that step ran with agents present.
  std::optional<double> spread_at(std::int64_t step) const;
};

/// Line through the exit centroid, perpendicular to the wall holding the exit.
struct ExitAxis {
  enum class Orientation { Vertical, Horizontal };
  Orientation orientation = Orientation::Vertical;
  double coordinate = 0.0;  // column for Vertical, row for Horizontal
};

/// Exits on the top or bottom border give a vertical axis, exits on the left
/// or right border a horizontal one. Interior exits use the orientation of
/// their longer extent (vertical for a horizontal opening).
ExitAxis exit_axis(const Grid& grid);

/// Mean absolute distance of agents from the exit axis, in cells. Unset for
/// an empty room.
std::optional<double> spread_metric(std::span<const Cell> agents, const ExitAxis& axis);

RenderedSnapshot render_snapshot(const Occupancy& occupancy, const Grid& grid);

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Header `step,remaining,spread`, one row per recorded step. Throws
/// std::logic_error if the curve is not non-increasing.
std::string format_curve_csv(const SimulationResult& result);

std::string format_distributions_csv(std::span<const AgentDistribution> rows);

/// Row-major, `inf` for unreachable cells and walls.
std::string format_field_csv(const StaticField& field);

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& text);

/// Writes curve.csv, distributions.csv (when traced) and the snapshot files
/// snapshots/tNNNN.txt, snapshots/tNNNN.pgm under `dir`.
void export_result(const SimulationResult& result, const std::filesystem::path& dir);

/// One simulation in a batch, reduced to what the aggregate tables need.
struct BatchRow {
  std::string param;  // swept key, empty for plain multi-seed runs
  std::string value;  // swept value as given
  std::uint64_t seed = 0;
  std::optional<std::int64_t> evac_time;
  std::int64_t steps_run = 0;
  std::optional<double> spread;  // spread at the batch's reference step
};

BatchRow summarize_run(const SimulationResult& result, std::string param, std::string value,
                       std::uint64_t seed, std::int64_t spread_step);

/// Statistics for all rows sharing one swept value. Incomplete runs enter the
/// evacuation-time statistics censored at the number of steps they ran.
struct BatchSummary {
  std::string param;
  std::string value;
  int runs = 0;
  int complete = 0;
  double evac_mean = 0.0;
  double evac_stddev = 0.0;
  double evac_min = 0.0;
  double evac_median = 0.0;
  double evac_p90 = 0.0;
  double evac_max = 0.0;
  std::optional<double> spread_mean;
};

/// Groups rows by (param, value) in first-appearance order.
std::vector<BatchSummary> summarize_batch(std::span<const BatchRow> rows);

/// Per-run rows followed by one aggregate row per value (seed column `mean`).
/// Header: `param,value,seed,evac_time,complete,spread`.
std::string format_runs_csv(std::span<const BatchRow> rows);

/// One row per value with the full statistics.
std::string format_summary_csv(std::span<const BatchSummary> summaries);

}  // namespace ffca
