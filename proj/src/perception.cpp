#include "ffca/perception.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffca {

namespace {
constexpr double kSupportSquared = 5.0;
}

int obstacle_distance(const Grid& grid, Cell cell, Direction dir, int radius) {
  int free = 0;
  while (free < radius && !grid.is_wall(step_toward(cell, dir, free + 1))) ++free;
  return free;
}

double kernel_phi(double z) {
  const double z2 = z * z;
  if (z2 >= kSupportSquared) return 0.0;
  return std::max(0.0, (0.335 - 0.067 * z2) * 4.4742);
}

double kernel_bandwidth(int r_star) { return (r_star + 1) / std::sqrt(5.0); }

double raw_density(const Occupancy& occupancy, Cell cell, Direction dir, int r_star) {
  if (r_star < 1) throw std::invalid_argument("density requires r_star >= 1");
  const double bandwidth = kernel_bandwidth(r_star);
  double sum = 0.0;
  for (int m = 1; m <= r_star; ++m) {
    const Cell c = step_toward(cell, dir, m);
    if (occupancy.contains(c) && occupancy[c] != 0) sum += kernel_phi(m / bandwidth);
  }
  return sum / r_star;
}

double density(const Occupancy& occupancy, Cell cell, Direction dir, int r_star) {
  return std::clamp(raw_density(occupancy, cell, dir, r_star), 0.0, 1.0);
}

}  // namespace ffca
