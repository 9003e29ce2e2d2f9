#include "ffca/floorfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

namespace ffca {

namespace {

// a + b*sqrt(2), compared exactly.
struct PathLength {
  std::int64_t straight = 0;
  std::int64_t diagonal = 0;

  double value() const {
    return static_cast<double>(straight) + static_cast<double>(diagonal) * std::sqrt(2.0);
  }
};

bool shorter(const PathLength& lhs, const PathLength& rhs) {
  // lhs < rhs  <=>  x < y*sqrt(2)
  const std::int64_t x = lhs.straight - rhs.straight;
  const std::int64_t y = rhs.diagonal - lhs.diagonal;
  if (x < 0 && y >= 0) return true;
  if (x >= 0 && y <= 0) return false;
  if (x >= 0) return x * x < 2 * y * y;
  return x * x > 2 * y * y;
}

struct QueueEntry {
  PathLength length;
  std::size_t offset;
};

struct LongerFirst {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (shorter(b.length, a.length)) return true;
    if (shorter(a.length, b.length)) return false;
    return a.offset > b.offset;
  }
};

struct Move {
  int drow;
  int dcol;
  bool diagonal;
};

constexpr Move kMoves[] = {{-1, 0, false}, {0, 1, false},  {1, 0, false},  {0, -1, false},
                           {-1, 1, true},  {1, 1, true},   {1, -1, true},  {-1, -1, true}};

}  // namespace

double quantize_distance(double value) {
  if (!std::isfinite(value)) return value;
  return std::nearbyint(value / kFieldResolution) * kFieldResolution;
}

StaticField::StaticField(Matrix<double> values) : values_(std::move(values)) {
  double base = kInfinity;
  for (double v : values_.data()) {
    if (std::isfinite(v)) base = std::min(base, v);
  }
  for (double& v : values_.data()) v = std::isfinite(v) ? quantize_distance(v - base) : kInfinity;
}

StaticField compute_sff(const Grid& grid) {
  const int height = grid.height();
  const int width = grid.width();
  std::vector<PathLength> best(static_cast<std::size_t>(height) * static_cast<std::size_t>(width));
  std::vector<std::uint8_t> reached(best.size(), 0);
  std::vector<std::uint8_t> settled(best.size(), 0);
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, LongerFirst> queue;

  const Matrix<std::uint8_t>& walls = grid.walls();
  for (Cell e : grid.exits()) {
    if (grid.is_wall(e)) continue;
    const std::size_t off = walls.offset_of(e);
    best[off] = PathLength{};
    reached[off] = 1;
    queue.push(QueueEntry{PathLength{}, off});
  }

  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    if (settled[top.offset]) continue;
    settled[top.offset] = 1;
    const Cell here = walls.cell_of(top.offset);

    for (const Move& m : kMoves) {
      const Cell next{here.row + m.drow, here.col + m.dcol};
      if (grid.is_wall(next)) continue;
      if (m.diagonal && (grid.is_wall(Cell{here.row + m.drow, here.col}) ||
                         grid.is_wall(Cell{here.row, here.col + m.dcol}))) {
        continue;
      }
      const std::size_t next_off = walls.offset_of(next);
      if (settled[next_off]) continue;
      PathLength candidate = top.length;
      (m.diagonal ? candidate.diagonal : candidate.straight) += 1;
      if (!reached[next_off] || shorter(candidate, best[next_off])) {
        best[next_off] = candidate;
        reached[next_off] = 1;
        queue.push(QueueEntry{candidate, next_off});
      }
    }
  }

  Matrix<double> values(height, width, kInfinity);
  for (std::size_t off = 0; off < best.size(); ++off) {
    if (reached[off]) values[walls.cell_of(off)] = best[off].value();
  }
  return StaticField(std::move(values));
}

double delta_s(const StaticField& field, Cell cell, Direction dir) {
  const double neighbor = field[step_toward(cell, dir)];
  if (neighbor == kInfinity) return kNegInf;
  return field[cell] - neighbor;
}

double max_delta_s(const StaticField& field, Cell cell) {
  double best = kNegInf;
  for (Direction d : kDirections) best = std::max(best, delta_s(field, cell, d));
  return best;
}

}  // namespace ffca
