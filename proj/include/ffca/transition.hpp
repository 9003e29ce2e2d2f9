#pragma once

#include <array>

#include "ffca/floorfield.hpp"
#include "ffca/grid.hpp"
#include "ffca/scenario.hpp"

namespace ffca {

/// Unnormalized move weights, indexed by Direction.
struct DirectionWeights {
  std::array<double, 4> weights{};
  double norm = 0.0;
};

/// Move probabilities, indexed by Direction. Staying put is not part of this
/// distribution; it arises only from blocked targets and lost conflicts.
struct TransitionDistribution {
  std::array<double, 4> p{};
  bool norm_zero = true;
};

/// Weight of moving from `cell` toward `dir`:
///
///   exp(k_S*dS - k_P*D(r*) - k_W*(1 - r*/r)*[dS >= max dS]),
///
/// or exactly 0 when that neighbor is a wall. The wall penalty applies only to
/// directions that attain the best available dS. `cell` must be walkable with
/// a finite field value.
double unnormalized_weight(const StaticField& field, const Grid& grid, const Occupancy& occupancy,
                           Cell cell, Direction dir, const ModelParams& params);

/// All four weights and their sum. Shares the max-dS computation across
/// directions; each entry equals unnormalized_weight() for that direction.
DirectionWeights direction_weights(const StaticField& field, const Grid& grid,
                                   const Occupancy& occupancy, Cell cell,
                                   const ModelParams& params);

TransitionDistribution normalize(const DirectionWeights& weights);

TransitionDistribution transition_distribution(const StaticField& field, const Grid& grid,
                                               const Occupancy& occupancy, Cell cell,
                                               const ModelParams& params);

}  // namespace ffca
