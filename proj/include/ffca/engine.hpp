#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ffca/floorfield.hpp"
#include "ffca/grid.hpp"
#include "ffca/metrics_io.hpp"
#include "ffca/scenario.hpp"
#include "ffca/transition.hpp"

namespace ffca {

/// Deterministic random stream. The engine only uses uniform() and
/// uniform_index(), both defined in terms of raw 64-bit outputs so a given
/// seed produces the same trajectory on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);
  /// Independent child stream; advances this generator by one draw.
  Rng split();

  bool operator==(const Rng&) const = default;

 private:
  std::mt19937_64 engine_;
};

struct Agent {
  int id = 0;
  Cell cell;

  bool operator==(const Agent&) const = default;
};

/// Occupancy plus the live agents (sorted by id) and the random stream.
struct SimulationState {
  Occupancy occupancy;
  std::vector<Agent> agents;
  std::int64_t step = 0;
  Rng rng;

  /// Agents get ids 0..n-1 in the scenario's listing order. Seeds the stream
  /// from params.seed.
  static SimulationState initial(const Scenario& scenario);

  bool operator==(const SimulationState&) const = default;
};

/// An agent's intended cell for this step; target == source means stay.
struct Proposal {
  int agent_id = 0;
  Cell source;
  Cell target;

  bool operator==(const Proposal&) const = default;
};

/// Picks one direction from a normalized distribution with a single draw.
/// Requires !distribution.norm_zero.
Direction sample_direction(const TransitionDistribution& distribution, Rng& rng);

/// First draw over the move distribution. If the drawn neighbor is occupied
/// in the frozen snapshot, a second draw decides between the empty
/// neighbors, each keeping its original probability, and staying put, which
/// receives the combined probability of every occupied neighbor.
Proposal choose_target(const Agent& agent, const TransitionDistribution& distribution,
                       const Occupancy& occupancy, Rng& rng);

/// Returns the moves that go ahead. Proposals are grouped by target cell
/// (stays excluded) and groups are processed in raster order of the target:
/// a lone claimant always moves; with two or more, nobody moves with
/// probability `friction`, otherwise one claimant chosen uniformly moves.
std::vector<Proposal> resolve_conflicts(std::span<const Proposal> proposals, double friction,
                                        Rng& rng);

/// Thrown when a supposedly impossible state arises (two agents in one cell
/// after a step).
class EngineInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One parallel update: every agent proposes against the same frozen
/// occupancy, conflicts are resolved, permitted moves happen at once, and
/// agents standing on exits leave the room. Random draws are taken in
/// ascending agent id order, then in target raster order for conflicts.
///
/// Agents already on an exit when the step begins hold still and are removed
/// at its end. When `trace` is non-null the per-agent distributions are
/// appended to it.
SimulationState step(SimulationState state, const StaticField& field, const Grid& grid,
                     const ModelParams& params, std::vector<AgentDistribution>* trace = nullptr);

struct RunOptions {
  std::vector<std::int64_t> snapshot_steps = kDefaultSnapshotSteps;
  std::optional<std::int64_t> trace_step;  // record distributions at this step
};

class InvalidScenario : public std::runtime_error {
 public:
  explicit InvalidScenario(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Steps until the room is empty or params.max_steps is reached. Snapshot
/// step 0 captures the initial layout.
SimulationResult run(const Scenario& scenario, const StaticField& field,
                     const RunOptions& options = {});

/// Computes the field and validates first; throws InvalidScenario.
SimulationResult run(const Scenario& scenario, const RunOptions& options = {});

}  // namespace ffca
