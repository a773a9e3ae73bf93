"""Networked dictator game played by status-maximizing agents."""

from .core import (
    Agents,
    CycleDelta,
    World,
    apply_memory_decay,
    compute_delta,
    compute_deltas,
    compute_marginal_utility,
    init_world,
    marginal_utility_matrix,
    play_cycle_wealth,
    rewire,
    simulate,
    step,
    update_strategies,
    update_utilities,
)
from .harness import (
    AggregateRecord,
    ExperimentPlan,
    RunResult,
    derive_seed,
    run_ensemble,
    run_single,
    sweep_presets,
    time_average,
)
from .metrics import MetricsRecord, collect
from .params import ConfigError, ParameterWarning, SimParams, validate_params

__version__ = "0.1.0"
