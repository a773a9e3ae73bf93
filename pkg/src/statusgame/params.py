"""Simulation parameters and their validation."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, fields, replace


class ConfigError(ValueError):
    """Structurally invalid parameters."""


class ParameterWarning(UserWarning):
    """Parameters outside the range where the dynamics are interesting."""


@dataclass(frozen=True)
class SimParams:
    n_agents: int = 100
    cost: float = 0.0
    memory: float = 0.0
    stake: float = 1.0
    cycles: int = 10000
    init_mean_degree: float = 4.0
    dx_init: float = 0.1
    dx_min: float = 0.01
    anneal_cycles: int = 1000
    seed: int = 0

    def replace(self, **changes) -> "SimParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def validate_params(params: SimParams) -> list[str]:
    """Check ``params`` and return soft warnings.

    Raises ConfigError for values the model cannot run with. Values that
    run but make the dynamics degenerate (no agent can ever profit, or
    forgetting swamps every per-cycle utility change) are reported as
    warning strings instead.
    """
    p = params
    if int(p.n_agents) != p.n_agents or p.n_agents < 1:
        raise ConfigError(f"n_agents must be a positive integer, got {p.n_agents!r}")
    if p.cost < 0:
        raise ConfigError(f"cost must be >= 0, got {p.cost!r}")
    if p.memory < 0:
        raise ConfigError(f"memory must be >= 0, got {p.memory!r}")
    if not p.stake > 0:
        raise ConfigError(f"stake must be > 0, got {p.stake!r}")
    if int(p.cycles) != p.cycles or p.cycles < 0:
        raise ConfigError(f"cycles must be a non-negative integer, got {p.cycles!r}")
    if not 0 <= p.init_mean_degree <= max(p.n_agents - 1, 0):
        raise ConfigError(
            f"init_mean_degree must lie in [0, {p.n_agents - 1}], got {p.init_mean_degree!r}"
        )
    if not 0 < p.dx_min <= p.dx_init:
        raise ConfigError(f"need 0 < dx_min <= dx_init, got {p.dx_min!r}, {p.dx_init!r}")
    if int(p.anneal_cycles) != p.anneal_cycles or p.anneal_cycles < 1:
        raise ConfigError(f"anneal_cycles must be >= 1, got {p.anneal_cycles!r}")
    if not 0 <= p.seed < 2**64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {p.seed!r}")

    out = []
    max_income = 2 * (p.n_agents - 1)
    if p.cost >= max_income:
        out.append(
            f"cost {p.cost:g} >= 2(N-1) = {max_income}: no agent can cover its living cost"
        )
    memory_bound = (max_income - p.cost) * p.stake
    if memory_bound > 0 and p.memory >= memory_bound:
        out.append(
            f"memory {p.memory:g} >= (2(N-1)-c)M = {memory_bound:g}: "
            "forgetting outpaces any single-cycle utility change"
        )
    return out


def check_params(params: SimParams) -> None:
    """Validate and forward soft problems to the warnings machinery."""
    for msg in validate_params(params):
        warnings.warn(msg, ParameterWarning, stacklevel=2)
