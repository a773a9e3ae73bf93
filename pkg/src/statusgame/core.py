"""Networked dictator game with status-maximizing agents.

Every linked pair plays the dictator game twice per cycle (each agent
dictates once), a living cost is deducted, each agent updates its directed
utility ledger about every other agent, links are formed or cut from the
ledger, and strategies follow a hill climb on the relative-status change.

All per-cycle quantities are computed from the synchronous snapshot taken
at the start of the cycle (T0); the result is the state at T1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from ._bits import bitsets, popcount
from .params import ConfigError, SimParams, validate_params


@dataclass
class Agents:
    """Per-agent state as parallel arrays indexed by agent id."""

    wealth: np.ndarray
    strategy: np.ndarray
    step_dir: np.ndarray
    step_mag: np.ndarray

    @property
    def n(self) -> int:
        return len(self.wealth)

    def copy(self) -> "Agents":
        return Agents(
            self.wealth.copy(), self.strategy.copy(), self.step_dir.copy(), self.step_mag.copy()
        )


@dataclass
class CycleDelta:
    wealth_before: np.ndarray
    wealth_after: np.ndarray
    degree_before: np.ndarray
    delta: np.ndarray | None = None

    @property
    def change(self) -> np.ndarray:
        return self.wealth_after - self.wealth_before


@dataclass
class World:
    """Complete model state between two cycles.

    ``adjacency`` is a symmetric boolean matrix with an empty diagonal;
    ``utility[i, j]`` is how much agent i considers j to have benefited it.
    ``cycle`` counts completed cycles.
    """

    params: SimParams
    agents: Agents
    adjacency: np.ndarray
    utility: np.ndarray
    cycle: int = 0

    def copy(self) -> "World":
        return World(
            self.params, self.agents.copy(), self.adjacency.copy(), self.utility.copy(), self.cycle
        )


def random_graph(n: int, mean_degree: float, rng: np.random.Generator) -> np.ndarray:
    """G(n, p) adjacency matrix with p = mean_degree / (n - 1)."""
    adj = np.zeros((n, n), dtype=bool)
    if n < 2:
        return adj
    p = mean_degree / (n - 1)
    iu = np.triu_indices(n, k=1)
    adj[iu] = rng.random(len(iu[0])) < p
    return adj | adj.T


def init_world(params: SimParams) -> World:
    validate_params(params)
    n = params.n_agents
    rng = np.random.default_rng(params.seed)
    adj = random_graph(n, params.init_mean_degree, rng)
    agents = Agents(
        wealth=np.zeros(n),
        strategy=rng.random(n),
        step_dir=rng.choice(np.array([-1, 1], dtype=np.int8), size=n),
        step_mag=np.full(n, float(params.dx_init)),
    )
    return World(params, agents, adj, np.zeros((n, n)))


def play_cycle_wealth(agents: Agents, adjacency: np.ndarray, params: SimParams) -> CycleDelta:
    """Play every linked pair twice and charge the living cost.

    Agent i keeps (1 - x_i) M from each game it dictates and receives
    x_j M from each neighbour j; wealth is floored at zero afterwards.
    """
    a = adjacency.astype(float)
    k = a.sum(axis=1)
    v0 = agents.wealth
    income = k * (1.0 - agents.strategy) + a @ agents.strategy - params.cost
    v1 = np.maximum(v0 + params.stake * income, 0.0)
    return CycleDelta(v0.copy(), v1, k)


def compute_delta(i: int, cycle_delta: CycleDelta, adjacency: np.ndarray) -> float:
    """Relative-status change of agent i over one cycle."""
    dv = cycle_delta.change
    nbrs = np.flatnonzero(adjacency[i])
    return float((len(nbrs) + 1) * dv[i] - dv[nbrs].sum())


def compute_deltas(cycle_delta: CycleDelta, adjacency: np.ndarray) -> np.ndarray:
    dv = cycle_delta.change
    a = adjacency.astype(float)
    return (a.sum(axis=1) + 1.0) * dv - a @ dv


def compute_marginal_utility(
    i: int,
    j: int,
    cycle_delta: CycleDelta,
    adjacency: np.ndarray,
    strategy: np.ndarray,
    params: SimParams,
) -> float:
    """One-cycle benefit of agent j as perceived by agent i.

    ``strategy`` holds the T0 division strategies.
    """
    if i == j:
        raise ValueError("marginal utility is only defined for i != j")
    k_i = int(adjacency[i].sum())
    shared = int(np.count_nonzero(adjacency[i] & adjacency[j]))
    dv_j = cycle_delta.wealth_after[j] - cycle_delta.wealth_before[j]
    return float((k_i - shared + 1) * strategy[j] * params.stake - dv_j)


def marginal_utility_matrix(
    cycle_delta: CycleDelta, adjacency: np.ndarray, strategy: np.ndarray, params: SimParams
) -> np.ndarray:
    """All U'_ij at once; the diagonal is meaningless and left as computed."""
    a = adjacency.astype(float)
    k = a.sum(axis=1)
    shared = a @ a
    gift = (k[:, None] - shared + 1.0) * (strategy * params.stake)[None, :]
    return gift - cycle_delta.change[None, :]


def apply_memory_decay(u, gamma0: float):
    """Shrink |u| by at most ``gamma0`` without crossing zero.

    Works elementwise on arrays and returns a float for scalar input.
    """
    u = np.asarray(u, dtype=float)
    out = np.sign(u) * np.maximum(np.abs(u) - gamma0, 0.0)
    return float(out) if out.ndim == 0 else out


@numba.njit(cache=True)
def _ledger_step(utility, bits, k, gift, dv, gamma0):
    n = utility.shape[0]
    words = bits.shape[1]
    out = np.empty_like(utility)
    one = np.uint64(1)
    for i in range(n):
        for j in range(n):
            u = utility[i, j]
            if (bits[i, j >> 6] >> np.uint64(j & 63)) & one:
                shared = 0
                for w in range(words):
                    shared += int(popcount(bits[i, w] & bits[j, w]))
                u = u + ((k[i] - shared + 1.0) * gift[j] - dv[j])
            if u > gamma0:
                out[i, j] = u - gamma0
            elif u < -gamma0:
                out[i, j] = u + gamma0
            else:
                out[i, j] = 0.0
        out[i, i] = 0.0
    return out


def update_utilities(
    utility: np.ndarray,
    cycle_delta: CycleDelta,
    adjacency: np.ndarray,
    agents_t0: Agents,
    params: SimParams,
) -> np.ndarray:
    """Add this cycle's U' for linked pairs, then let every entry fade toward zero.

    Unlinked pairs only forget. The diagonal is kept at zero.
    """
    k = adjacency.sum(axis=1).astype(float)
    return _ledger_step(
        np.ascontiguousarray(utility, dtype=float),
        bitsets(adjacency),
        k,
        agents_t0.strategy * params.stake,
        cycle_delta.change,
        float(params.memory),
    )


def rewire(utility: np.ndarray) -> np.ndarray:
    """Link i and j iff neither considers the other harmful (U >= 0 both ways)."""
    ok = utility >= 0
    adj = ok & ok.T
    np.fill_diagonal(adj, False)
    return adj


def step_size(cycle_index: int, params: SimParams) -> float:
    """Hill-climb step: linear from dx_init to dx_min over anneal_cycles."""
    frac = min(cycle_index, params.anneal_cycles) / params.anneal_cycles
    return max(params.dx_min, params.dx_init - (params.dx_init - params.dx_min) * frac)


def update_strategies(
    agents: Agents, deltas: np.ndarray, cycle_index: int, params: SimParams
) -> Agents:
    """Keep the step direction while status does not drop, else reverse it."""
    step_dir = np.where(deltas < 0, -agents.step_dir, agents.step_dir).astype(np.int8)
    mag = step_size(cycle_index, params)
    strategy = np.clip(agents.strategy + step_dir * mag, 0.0, 1.0)
    return Agents(agents.wealth, strategy, step_dir, np.full(agents.n, mag))


def step(world: World, cycle_index: int | None = None) -> tuple[World, CycleDelta]:
    """Advance ``world`` by one full cycle; returns the new world and the cycle's deltas."""
    if cycle_index is None:
        cycle_index = world.cycle
    p = world.params
    adj0 = world.adjacency
    agents0 = world.agents

    cd = play_cycle_wealth(agents0, adj0, p)
    cd.delta = compute_deltas(cd, adj0)
    utility = update_utilities(world.utility, cd, adj0, agents0, p)
    adj1 = rewire(utility)
    moved = Agents(cd.wealth_after, agents0.strategy, agents0.step_dir, agents0.step_mag)
    agents1 = update_strategies(moved, cd.delta, cycle_index, p)
    return World(p, agents1, adj1, utility, world.cycle + 1), cd


def simulate(params: SimParams, cycles: int | None = None):
    """Yield (world, cycle_delta) after each cycle, starting from init_world."""
    world = init_world(params)
    n = params.cycles if cycles is None else cycles
    if n < 0:
        raise ConfigError("cycles must be non-negative")
    for t in range(n):
        world, cd = step(world, t)
        yield world, cd
