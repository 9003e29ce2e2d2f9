#pragma once

#include <limits>

#include "ffca/grid.hpp"

namespace ffca {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Returned by delta_s() for a direction that leads into a wall, off the map
/// or into an unreachable cell. It never wins a maximum.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Finite field values are held on a dyadic grid of this spacing. Any sum or
/// difference of two stored values below 2^16 steps is then exact in double
/// precision.
inline constexpr double kFieldResolution = 1.0 / 68719476736.0;  // 2^-36

/// Rounds a distance onto the kFieldResolution grid.
double quantize_distance(double value);

/// Distance-to-nearest-exit map, in steps. Walls and cells cut off from every
/// exit hold +infinity.
///
/// Only differences of the field matter, so it is stored relative to its
/// smallest finite entry. Two matrices that differ by a constant offset give
/// bit-identical fields as long as the offset values stay below 2^15 in
/// magnitude.
class StaticField {
 public:
  StaticField() = default;
  /// Finite entries are shifted so the smallest is zero, then quantized with
  /// quantize_distance(); everything else becomes +infinity.
  explicit StaticField(Matrix<double> values);

  /// +infinity outside the matrix.
  double operator[](Cell c) const { return values_.contains(c) ? values_[c] : kInfinity; }
  bool is_finite(Cell c) const { return (*this)[c] != kInfinity; }

  const Matrix<double>& values() const { return values_; }

 private:
  Matrix<double> values_;
};

/// Multi-source shortest path from all exits over the 8-neighborhood:
/// orthogonal steps cost 1, diagonal steps cost sqrt(2) and are allowed only
/// when both orthogonally adjacent cells of the move are open (no cutting a
/// wall corner).
///
/// Path lengths are tracked exactly as a + b*sqrt(2) with integer a, b and
/// rounded once when the field is built.
StaticField compute_sff(const Grid& grid);

/// S[cell] - S[neighbor]; kNegInf when the neighbor is a wall, out of bounds
/// or unreachable. `cell` must have a finite value.
double delta_s(const StaticField& field, Cell cell, Direction dir);

/// Largest delta_s() over the four directions (kNegInf if all are blocked).
double max_delta_s(const StaticField& field, Cell cell);

}  // namespace ffca
