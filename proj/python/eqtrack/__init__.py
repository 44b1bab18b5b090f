"""Equivariant trajectory tracking on matrix Lie groups."""

from ._core import (
    Gains,
    Group,
    PreconditionError,
    Scenario,
    ScenarioError,
    SimulationError,
    StepError,
    __version__,
    expm,
    hat,
    load_scenario,
    nearest_rotation,
    parse_scenario,
    rodrigues,
    run_suite,
    simulate,
    so3,
    suite_names,
    vee,
)

__all__ = [
    "Gains",
    "Group",
    "PreconditionError",
    "Scenario",
    "ScenarioError",
    "SimulationError",
    "StepError",
    "__version__",
    "expm",
    "hat",
    "load_scenario",
    "nearest_rotation",
    "parse_scenario",
    "rodrigues",
    "run_suite",
    "simulate",
    "so3",
    "suite_names",
    "vee",
]
