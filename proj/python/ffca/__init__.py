"""Floor-field cellular automaton pedestrian evacuation simulator."""

from ._core import (
    Cell,
    Direction,
    Grid,
    ModelParams,
    Scenario,
    ScenarioParseError,
    SimulationResult,
    StaticField,
    DEFAULT_SNAPSHOT_STEPS,
    __version__,
    compute_sff,
    delta_s,
    density,
    kernel_phi,
    load_scenario,
    max_delta_s,
    obstacle_distance,
    parse_scenario,
    run,
    serialize_scenario,
    transition_distribution,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
