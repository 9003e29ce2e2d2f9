#include "ffca/metrics_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "ffca/scenario.hpp"

namespace ffca {

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string snapshot_stem(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%04lld", static_cast<long long>(step));
  return buf;
}

// Linear interpolation between closest ranks on sorted data.
double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::optional<double> SimulationResult::spread_at(std::int64_t step) const {
  for (const CurvePoint& p : evac_curve) {
    if (p.step == step) return p.spread;
  }
  return std::nullopt;
}

ExitAxis exit_axis(const Grid& grid) {
  const auto& exits = grid.exits();
  if (exits.empty()) return ExitAxis{};
  double row_sum = 0.0;
  double col_sum = 0.0;
  int min_row = exits.front().row, max_row = min_row;
  int min_col = exits.front().col, max_col = min_col;
  bool top_bottom = true;
  bool left_right = true;
  for (Cell e : exits) {
    row_sum += e.row;
    col_sum += e.col;
    min_row = std::min(min_row, e.row);
    max_row = std::max(max_row, e.row);
    min_col = std::min(min_col, e.col);
    max_col = std::max(max_col, e.col);
    top_bottom = top_bottom && (e.row == 0 || e.row == grid.height() - 1);
    left_right = left_right && (e.col == 0 || e.col == grid.width() - 1);
  }
  const double n = static_cast<double>(exits.size());
  bool vertical = max_col - min_col >= max_row - min_row;
  if (top_bottom) {
    vertical = true;
  } else if (left_right) {
    vertical = false;
  }
  if (vertical) return ExitAxis{ExitAxis::Orientation::Vertical, col_sum / n};
  return ExitAxis{ExitAxis::Orientation::Horizontal, row_sum / n};
}

std::optional<double> spread_metric(std::span<const Cell> agents, const ExitAxis& axis) {
  if (agents.empty()) return std::nullopt;
  double sum = 0.0;
  for (Cell a : agents) {
    const double pos = axis.orientation == ExitAxis::Orientation::Vertical ? a.col : a.row;
    sum += std::abs(pos - axis.coordinate);
  }
  return sum / static_cast<double>(agents.size());
}

RenderedSnapshot render_snapshot(const Occupancy& occupancy, const Grid& grid) {
  std::vector<Cell> agents;
  for (int r = 0; r < occupancy.height(); ++r) {
    for (int c = 0; c < occupancy.width(); ++c) {
      if (occupancy[Cell{r, c}] != 0) agents.push_back(Cell{r, c});
    }
  }
  RenderedSnapshot out;
  out.ascii = render_map(grid, agents);

  out.pgm = "P5\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) + "\n255\n";
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      const Cell cell{r, c};
      std::uint8_t level = kGrayEmpty;
      if (grid.is_wall(cell)) {
        level = kGrayWall;
      } else if (occupancy.contains(cell) && occupancy[cell] != 0) {
        level = kGrayAgent;
      } else if (grid.is_exit(cell)) {
        level = kGrayExit;
      }
      out.pgm.push_back(static_cast<char>(level));
    }
  }
  return out;
}

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

std::string format_curve_csv(const SimulationResult& result) {
  std::string out = "step,remaining,spread\n";
  int previous = result.initial_agents;
  for (const CurvePoint& p : result.evac_curve) {
    if (p.remaining > previous) {
      throw std::logic_error("evacuation curve increases at step " + std::to_string(p.step));
    }
    previous = p.remaining;
    out += std::to_string(p.step) + "," + std::to_string(p.remaining) + "," + fmt(p.spread) + "\n";
  }
  return out;
}

std::string format_distributions_csv(std::span<const AgentDistribution> rows) {
  std::string out = "step,agent,row,col,p_up,p_right,p_down,p_left,norm_zero\n";
  for (const AgentDistribution& d : rows) {
    out += std::to_string(d.step) + "," + std::to_string(d.agent_id) + "," +
           std::to_string(d.cell.row) + "," + std::to_string(d.cell.col);
    for (double p : d.distribution.p) out += "," + fmt(p);
    out += d.distribution.norm_zero ? ",1\n" : ",0\n";
  }
  return out;
}

std::string format_field_csv(const StaticField& field) {
  const Matrix<double>& s = field.values();
  std::string out;
  for (int r = 0; r < s.height(); ++r) {
    for (int c = 0; c < s.width(); ++c) {
      if (c > 0) out.push_back(',');
      out += fmt(s[Cell{r, c}]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path(), "cannot create directory: " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError(path, "write failed");
}

void export_result(const SimulationResult& result, const std::filesystem::path& dir) {
  write_file(dir / "curve.csv", format_curve_csv(result));
  if (!result.distributions.empty()) {
    write_file(dir / "distributions.csv", format_distributions_csv(result.distributions));
  }
  for (const SnapshotRecord& s : result.snapshots) {
    const std::string stem = snapshot_stem(s.step);
    write_file(dir / "snapshots" / (stem + ".txt"), s.raster.ascii);
    write_file(dir / "snapshots" / (stem + ".pgm"), s.raster.pgm);
  }
}

BatchRow summarize_run(const SimulationResult& result, std::string param, std::string value,
                       std::uint64_t seed, std::int64_t spread_step) {
  return BatchRow{std::move(param), std::move(value), seed,   result.evac_time,
                  result.steps_run, result.spread_at(spread_step)};
}

std::vector<BatchSummary> summarize_batch(std::span<const BatchRow> rows) {
  std::vector<BatchSummary> out;
  std::vector<std::vector<const BatchRow*>> groups;
  for (const BatchRow& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const BatchSummary& s) {
      return s.param == row.param && s.value == row.value;
    });
    if (it == out.end()) {
      BatchSummary fresh;
      fresh.param = row.param;
      fresh.value = row.value;
      out.push_back(std::move(fresh));
      groups.emplace_back();
      it = out.end() - 1;
    }
    groups[static_cast<std::size_t>(it - out.begin())].push_back(&row);
  }

  for (std::size_t g = 0; g < out.size(); ++g) {
    BatchSummary& s = out[g];
    std::vector<double> times;
    double spread_sum = 0.0;
    int spread_count = 0;
    for (const BatchRow* row : groups[g]) {
      ++s.runs;
      if (row->evac_time) ++s.complete;
      times.push_back(static_cast<double>(row->evac_time.value_or(row->steps_run)));
      if (row->spread) {
        spread_sum += *row->spread;
        ++spread_count;
      }
    }
    std::sort(times.begin(), times.end());
    const double n = static_cast<double>(times.size());
    s.evac_mean = std::accumulate(times.begin(), times.end(), 0.0) / n;
    if (times.size() > 1) {
      double ss = 0.0;
      for (double t : times) ss += (t - s.evac_mean) * (t - s.evac_mean);
      s.evac_stddev = std::sqrt(ss / (n - 1.0));
    }
    s.evac_min = times.front();
    s.evac_max = times.back();
    s.evac_median = percentile(times, 0.5);
    s.evac_p90 = percentile(times, 0.9);
    if (spread_count > 0) s.spread_mean = spread_sum / spread_count;
  }
  return out;
}

std::string format_runs_csv(std::span<const BatchRow> rows) {
  std::string out = "param,value,seed,evac_time,complete,spread\n";
  for (const BatchRow& r : rows) {
    out += r.param + "," + r.value + "," + std::to_string(r.seed) + "," +
           (r.evac_time ? std::to_string(*r.evac_time) : std::string("incomplete")) + "," +
           (r.evac_time ? "1" : "0") + "," + fmt(r.spread) + "\n";
  }
  for (const BatchSummary& s : summarize_batch(rows)) {
    out += s.param + "," + s.value + ",mean," + fmt(s.evac_mean) + "," + std::to_string(s.complete) +
           "," + fmt(s.spread_mean) + "\n";
  }
  return out;
}

std::string format_summary_csv(std::span<const BatchSummary> summaries) {
  std::string out =
      "param,value,runs,complete,evac_mean,evac_stddev,evac_min,evac_median,evac_p90,evac_max,"
      "spread_mean\n";
  for (const BatchSummary& s : summaries) {
    out += s.param + "," + s.value + "," + std::to_string(s.runs) + "," +
           std::to_string(s.complete) + "," + fmt(s.evac_mean) + "," + fmt(s.evac_stddev) + "," +
           fmt(s.evac_min) + "," + fmt(s.evac_median) + "," + fmt(s.evac_p90) + "," +
           fmt(s.evac_max) + "," + fmt(s.spread_mean) + "\n";
  }
  return out;
}

}  // namespace ffca
