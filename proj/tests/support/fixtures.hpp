#pragma once

#include <string>
#include <vector>

#include "ffca/scenario.hpp"
#include "support/oracles.hpp"

namespace ffca::testing {

inline ModelParams reference_params(double k_people = 6.0) {
  ModelParams p;
  p.k_sff = 4.0;
  p.k_people = k_people;
  p.k_wall = 4.0;
  p.visibility = 10;
  p.friction = 0.5;
  p.seed = 1;
  p.max_steps = 3000;
  return p;
}

inline Scenario scenario_from_rows(const Rows& rows, const ModelParams& params) {
  MapLayout layout = parse_map(join_rows(rows));
  return Scenario{std::move(layout.grid), std::move(layout.agents), params};
}

inline Grid grid_from_rows(const Rows& rows) { return parse_map(join_rows(rows)).grid; }

inline Occupancy occupancy_from_rows(const Rows& rows) {
  Occupancy occ(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), 0);
  for (int r = 0; r < occ.height(); ++r)
    for (int c = 0; c < occ.width(); ++c)
      if (rows[r][c] == 'P') occ[Cell{r, c}] = 1;
  return occ;
}

/// Straight corridor: one row of `length` floor cells between walls, exit at
/// the right end (in the border), a lone agent at distance `length` from it.
inline Rows corridor(int length) {
  Rows rows(3, std::string(length + 2, '#'));
  for (int c = 1; c <= length; ++c) rows[1][c] = '.';
  rows[1][1] = 'P';
  rows[1][length + 1] = 'E';
  return rows;
}

/// Two agents whose only open neighbor is the same cell in front of an exit.
inline Rows bottleneck() { return {"##E##", "#P.P#", "#####"}; }

}  // namespace ffca::testing
