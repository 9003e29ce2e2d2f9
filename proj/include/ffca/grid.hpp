#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffca {

/// Physical edge length of one cell. Informational only; the model works in
/// cell units and steps.
inline constexpr double kCellSizeMeters = 0.4;

struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

std::string to_string(Cell c);

/// The four von Neumann moves, in the fixed order used for every
/// per-direction array in the library: up (row-1), right (col+1),
/// down (row+1), left (col-1).
enum class Direction : std::uint8_t { Up = 0, Right = 1, Down = 2, Left = 3 };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::Up, Direction::Right, Direction::Down, Direction::Left};

inline constexpr std::size_t index(Direction d) { return static_cast<std::size_t>(d); }

inline constexpr Cell offset(Direction d) {
  constexpr std::array<Cell, 4> kOffsets = {Cell{-1, 0}, Cell{0, 1}, Cell{1, 0}, Cell{0, -1}};
  return kOffsets[index(d)];
}

inline constexpr Cell step_toward(Cell c, Direction d, int distance = 1) {
  const Cell o = offset(d);
  return Cell{c.row + o.row * distance, c.col + o.col * distance};
}

const char* to_string(Direction d);

/// Dense row-major 2-D array.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int height, int width, T fill = T{})
      : height_(height), width_(width) {
    if (height < 0 || width < 0) throw std::invalid_argument("negative matrix dimension");
    data_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), fill);
  }

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }

  bool contains(Cell c) const {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }

  std::size_t offset_of(Cell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  Cell cell_of(std::size_t offset) const {
    return Cell{static_cast<int>(offset / static_cast<std::size_t>(width_)),
                static_cast<int>(offset % static_cast<std::size_t>(width_))};
  }

  T& operator[](Cell c) { return data_[offset_of(c)]; }
  const T& operator[](Cell c) const { return data_[offset_of(c)]; }

  T& at(Cell c) {
    if (!contains(c)) throw std::out_of_range("cell " + to_string(c) + " outside matrix");
    return (*this)[c];
  }
  const T& at(Cell c) const {
    if (!contains(c)) throw std::out_of_range("cell " + to_string(c) + " outside matrix");
    return (*this)[c];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<T> data_;
};

using Occupancy = Matrix<std::uint8_t>;

/// Static room geometry: obstacle matrix plus the exit cells.
///
/// Cells outside the matrix behave as walls for every query, so callers never
/// need a separate bounds check before asking about a neighbor.
class Grid {
 public:
  Grid() = default;
  /// Exits are stored sorted in raster order with duplicates removed.
  /// Consistency (exits in bounds, not on walls) is checked by validate(),
  /// not here.
  Grid(Matrix<std::uint8_t> walls, std::vector<Cell> exits);

  int height() const { return walls_.height(); }
  int width() const { return walls_.width(); }
  bool in_bounds(Cell c) const { return walls_.contains(c); }

  bool is_wall(Cell c) const { return !walls_.contains(c) || walls_[c] != 0; }
  bool is_exit(Cell c) const { return exit_mask_.contains(c) && exit_mask_[c] != 0; }

  const Matrix<std::uint8_t>& walls() const { return walls_; }
  const std::vector<Cell>& exits() const { return exits_; }

  bool operator==(const Grid& other) const {
    return walls_ == other.walls_ && exits_ == other.exits_;
  }

 private:
  Matrix<std::uint8_t> walls_;
  Matrix<std::uint8_t> exit_mask_;
  std::vector<Cell> exits_;
};

}  // namespace ffca
