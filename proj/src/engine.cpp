#include "ffca/engine.hpp"

#include <algorithm>
#include <cassert>

namespace ffca {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index over an empty range");
  const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return std::min(k, n - 1);
}

Rng Rng::split() { return Rng(engine_(), 0x9e3779b97f4a7c15ULL); }

SimulationState SimulationState::initial(const Scenario& scenario) {
  SimulationState state{Occupancy(scenario.grid.height(), scenario.grid.width(), 0), {}, 0,
                        Rng(scenario.params.seed)};
  state.agents.reserve(scenario.agents.size());
  int id = 0;
  for (Cell c : scenario.agents) {
    state.agents.push_back(Agent{id++, c});
    state.occupancy.at(c) = 1;
  }
  return state;
}

Direction sample_direction(const TransitionDistribution& distribution, Rng& rng) {
  assert(!distribution.norm_zero);
  const double u = rng.uniform();
  double cumulative = 0.0;
  Direction last = Direction::Up;
  for (Direction d : kDirections) {
    const double p = distribution.p[index(d)];
    if (p <= 0.0) continue;
    cumulative += p;
    last = d;
    if (u < cumulative) return d;
  }
  return last;
}

Proposal choose_target(const Agent& agent, const TransitionDistribution& distribution,
                       const Occupancy& occupancy, Rng& rng) {
  Proposal stay{agent.id, agent.cell, agent.cell};
  if (distribution.norm_zero) return stay;

  const auto occupied = [&occupancy](Cell c) { return occupancy.contains(c) && occupancy[c] != 0; };

  const Cell first = step_toward(agent.cell, sample_direction(distribution, rng));
  if (!occupied(first)) return Proposal{agent.id, agent.cell, first};

  // Blocked: empty neighbors keep their mass, the rest goes to staying put,
  // which is listed last so rounding slack also falls to it.
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (Direction d : kDirections) {
    const double p = distribution.p[index(d)];
    const Cell target = step_toward(agent.cell, d);
    if (p <= 0.0 || occupied(target)) continue;
    cumulative += p;
    if (u < cumulative) return Proposal{agent.id, agent.cell, target};
  }
  return stay;
}

std::vector<Proposal> resolve_conflicts(std::span<const Proposal> proposals, double friction,
                                        Rng& rng) {
  std::vector<Proposal> movers;
  for (const Proposal& p : proposals) {
    if (p.target != p.source) movers.push_back(p);
  }
  std::stable_sort(movers.begin(), movers.end(), [](const Proposal& a, const Proposal& b) {
    if (a.target != b.target) return a.target < b.target;
    return a.agent_id < b.agent_id;
  });

  std::vector<Proposal> permitted;
  for (std::size_t begin = 0; begin < movers.size();) {
    std::size_t end = begin + 1;
    while (end < movers.size() && movers[end].target == movers[begin].target) ++end;
    const std::size_t claimants = end - begin;
    if (claimants == 1) {
      permitted.push_back(movers[begin]);
    } else if (!(rng.uniform() < friction)) {
      permitted.push_back(movers[begin + rng.uniform_index(claimants)]);
    }
    begin = end;
  }
  return permitted;
}

SimulationState step(SimulationState state, const StaticField& field, const Grid& grid,
                     const ModelParams& params, std::vector<AgentDistribution>* trace) {
  const Occupancy& frozen = state.occupancy;
  const std::size_t n = state.agents.size();

  // Distributions depend only on the frozen snapshot; draws come afterwards in
  // id order so evaluation order never affects the random stream.
  std::vector<TransitionDistribution> distributions(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Agent& a = state.agents[k];
    if (grid.is_exit(a.cell)) continue;
    distributions[k] = transition_distribution(field, grid, frozen, a.cell, params);
    if (trace != nullptr) {
      trace->push_back(AgentDistribution{state.step, a.id, a.cell, distributions[k]});
    }
  }

  std::vector<Proposal> proposals;
  proposals.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Agent& a = state.agents[k];
    if (grid.is_exit(a.cell)) {
      proposals.push_back(Proposal{a.id, a.cell, a.cell});
    } else {
      proposals.push_back(choose_target(a, distributions[k], frozen, state.rng));
    }
  }

  const std::vector<Proposal> moves = resolve_conflicts(proposals, params.friction, state.rng);

  const auto agent_index = [&state](int id) {
    const auto it = std::lower_bound(state.agents.begin(), state.agents.end(), id,
                                     [](const Agent& a, int v) { return a.id < v; });
    return static_cast<std::size_t>(it - state.agents.begin());
  };
  for (const Proposal& m : moves) state.occupancy[m.source] = 0;
  for (const Proposal& m : moves) {
    if (state.occupancy[m.target] != 0) {
      throw EngineInvariantError("two agents moved into " + to_string(m.target));
    }
    state.occupancy[m.target] = 1;
    state.agents[agent_index(m.agent_id)].cell = m.target;
  }

  std::erase_if(state.agents, [&](const Agent& a) {
    if (!grid.is_exit(a.cell)) return false;
    state.occupancy[a.cell] = 0;
    return true;
  });
  ++state.step;
  return state;
}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::string msg = "invalid scenario";
  for (const Violation& v : violations) msg += "; " + v.message;
  return msg;
}

std::vector<Cell> agent_cells(const SimulationState& state) {
  std::vector<Cell> cells;
  cells.reserve(state.agents.size());
  for (const Agent& a : state.agents) cells.push_back(a.cell);
  return cells;
}

}  // namespace

InvalidScenario::InvalidScenario(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

SimulationResult run(const Scenario& scenario, const StaticField& field, const RunOptions& options) {
  const Grid& grid = scenario.grid;
  const ExitAxis axis = exit_axis(grid);
  std::vector<std::int64_t> snapshot_steps = options.snapshot_steps;
  std::sort(snapshot_steps.begin(), snapshot_steps.end());
  const auto wants_snapshot = [&snapshot_steps](std::int64_t t) {
    return std::binary_search(snapshot_steps.begin(), snapshot_steps.end(), t);
  };

  SimulationState state = SimulationState::initial(scenario);
  SimulationResult result;
  result.initial_agents = static_cast<int>(state.agents.size());
  if (wants_snapshot(0)) result.snapshots.push_back({0, render_snapshot(state.occupancy, grid)});

  while (!state.agents.empty() && state.step < scenario.params.max_steps) {
    const bool traced = options.trace_step && *options.trace_step == state.step;
    state = step(std::move(state), field, grid, scenario.params,
                 traced ? &result.distributions : nullptr);
    const std::vector<Cell> cells = agent_cells(state);
    result.evac_curve.push_back(CurvePoint{state.step, static_cast<int>(cells.size()),
                                           spread_metric(cells, axis)});
    if (wants_snapshot(state.step)) {
      result.snapshots.push_back({state.step, render_snapshot(state.occupancy, grid)});
    }
  }
  result.steps_run = state.step;
  if (state.agents.empty()) result.evac_time = state.step;
  return result;
}

SimulationResult run(const Scenario& scenario, const RunOptions& options) {
  const StaticField field = compute_sff(scenario.grid);
  auto violations = validate(scenario, field);
  if (!violations.empty()) throw InvalidScenario(std::move(violations));
  return run(scenario, field, options);
}

}  // namespace ffca
