#include "ffca/grid.hpp"

#include <algorithm>

namespace ffca {

std::string to_string(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Right: return "right";
    case Direction::Down: return "down";
    case Direction::Left: return "left";
  }
  return "?";
}

Grid::Grid(Matrix<std::uint8_t> walls, std::vector<Cell> exits)
    : walls_(std::move(walls)),
      exit_mask_(walls_.height(), walls_.width(), 0),
      exits_(std::move(exits)) {
  std::sort(exits_.begin(), exits_.end());
  exits_.erase(std::unique(exits_.begin(), exits_.end()), exits_.end());
  for (Cell e : exits_) {
    if (exit_mask_.contains(e)) exit_mask_[e] = 1;
  }
  for (auto& w : walls_.data()) w = w != 0 ? 1 : 0;
}

}  // namespace ffca
