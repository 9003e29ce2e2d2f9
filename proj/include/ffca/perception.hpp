#pragma once

#include "ffca/grid.hpp"

namespace ffca {

/// A direction ray from an agent's cell, truncated at the first obstacle.
struct Ray {
  Cell origin;
  Direction dir = Direction::Up;
  int r_star = 0;  // free cells along dir before the first wall, capped at the radius
};

/// Number of consecutive non-wall cells at offsets 1, 2, ... along `dir`,
/// capped at `radius`. Only walls (and the map edge) block; pedestrians do not.
int obstacle_distance(const Grid& grid, Cell cell, Direction dir, int radius);

inline Ray cast_ray(const Grid& grid, Cell cell, Direction dir, int radius) {
  return Ray{cell, dir, obstacle_distance(grid, cell, dir, radius)};
}

/// Truncated quadratic kernel used for the directional density:
/// (0.335 - 0.067 z^2) * 4.4742 for |z| <= sqrt(5), zero outside.
double kernel_phi(double z);

/// Kernel bandwidth for a ray of length r_star: (r_star + 1) / sqrt(5).
double kernel_bandwidth(int r_star);

/// Kernel-weighted occupancy along the ray, before clamping:
///   (1/r_star) * sum_{m=1..r_star} phi(m / bandwidth(r_star)) * f(offset m).
/// Can exceed 1 for densely occupied rays. Throws std::invalid_argument when
/// r_star < 1.
double raw_density(const Occupancy& occupancy, Cell cell, Direction dir, int r_star);

/// raw_density() clamped to [0, 1].
double density(const Occupancy& occupancy, Cell cell, Direction dir, int r_star);

}  // namespace ffca
