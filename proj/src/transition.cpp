#include "ffca/transition.hpp"

#include <cassert>
#include <cmath>

#include "ffca/perception.hpp"

namespace ffca {

namespace {

double weight_given_max(const StaticField& field, const Grid& grid, const Occupancy& occupancy,
                        Cell cell, Direction dir, double best_delta, const ModelParams& params) {
  if (grid.is_wall(step_toward(cell, dir))) return 0.0;

  const double ds = delta_s(field, cell, dir);
  const int r_star = obstacle_distance(grid, cell, dir, params.visibility);
  assert(r_star >= 1);

  double exponent = params.k_sff * ds - params.k_people * density(occupancy, cell, dir, r_star);
  if (ds - best_delta >= 0.0) {
    exponent -= params.k_wall * (1.0 - static_cast<double>(r_star) / params.visibility);
  }
  return std::exp(exponent);
}

}  // namespace

double unnormalized_weight(const StaticField& field, const Grid& grid, const Occupancy& occupancy,
                           Cell cell, Direction dir, const ModelParams& params) {
  return weight_given_max(field, grid, occupancy, cell, dir, max_delta_s(field, cell), params);
}

DirectionWeights direction_weights(const StaticField& field, const Grid& grid,
                                   const Occupancy& occupancy, Cell cell,
                                   const ModelParams& params) {
  const double best_delta = max_delta_s(field, cell);
  DirectionWeights out;
  for (Direction d : kDirections) {
    const double w = weight_given_max(field, grid, occupancy, cell, d, best_delta, params);
    out.weights[index(d)] = w;
    out.norm += w;
  }
  return out;
}

TransitionDistribution normalize(const DirectionWeights& weights) {
  TransitionDistribution out;
  out.norm_zero = !(weights.norm > 0.0);
  if (out.norm_zero) return out;
  for (std::size_t k = 0; k < 4; ++k) out.p[k] = weights.weights[k] / weights.norm;
  return out;
}

TransitionDistribution transition_distribution(const StaticField& field, const Grid& grid,
                                               const Occupancy& occupancy, Cell cell,
                                               const ModelParams& params) {
  return normalize(direction_weights(field, grid, occupancy, cell, params));
}

}  // namespace ffca
