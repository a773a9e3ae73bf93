"""Seeded single runs, ensembles over parameter grids, and sweep presets."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .core import World, init_world, step
from .metrics import METRIC_NAMES, MetricsRecord, collect
from .params import ConfigError, SimParams, validate_params

PAPER_VALUES = (0.0, 2.5, 5.0, 7.5, 10.0)
HALF_STEPS = tuple(0.5 * i for i in range(21))
POPULATIONS = (50, 100, 150, 200, 250, 300, 350, 400)


@dataclass
class RunResult:
    params: SimParams
    series: list[MetricsRecord]
    snapshots: dict[int, World]
    observations: list = field(default_factory=list)

    @property
    def final(self) -> World:
        return self.snapshots[max(self.snapshots)]


def run_single(
    params: SimParams,
    seed: int | None = None,
    snapshot_cycles: Sequence[int] = (),
    observer: Callable[[World], object] | None = None,
) -> RunResult:
    """Run ``params.cycles`` cycles, recording one MetricsRecord per cycle.

    ``snapshot_cycles`` lists completed-cycle counts at which a copy of the
    world is kept (0 is the initial world); the final world is always kept.
    ``observer`` is called on the world after every cycle and its return
    values are collected in ``observations``.
    """
    if seed is not None:
        params = params.replace(seed=seed)
    world = init_world(params)
    wanted = set(snapshot_cycles)
    snapshots = {0: world.copy()} if 0 in wanted else {}
    series = []
    observations = []
    for t in range(params.cycles):
        world, _ = step(world, t)
        series.append(collect(world))
        if observer is not None:
            observations.append(observer(world))
        if world.cycle in wanted:
            snapshots[world.cycle] = world.copy()
    snapshots[world.cycle] = world
    return RunResult(params, series, snapshots, observations)


def _values(series, metric):
    if metric is None:
        return list(series)
    return [getattr(r, metric) if not isinstance(r, dict) else r[metric] for r in series]


def time_average(series, metric: str | None = None) -> float | None:
    """Mean over the latter half of ``series``, positions [ceil(L/2), L).

    Undefined (None or NaN) entries are skipped; None if nothing is left.
    """
    values = _values(series, metric)
    if len(values) < 2:
        raise ValueError("time_average needs a series of at least two cycles")
    tail = [v for v in values[math.ceil(len(values) / 2):] if v is not None and v == v]
    if not tail:
        return None
    return float(np.mean(tail))


def window_average(series, metric: str, fraction: float) -> float | None:
    """Mean over the final ``fraction`` of the series, skipping undefined entries."""
    values = _values(series, metric)
    if not values:
        raise ValueError("empty series")
    start = len(values) - max(1, math.ceil(fraction * len(values)))
    tail = [v for v in values[start:] if v is not None and v == v]
    return float(np.mean(tail)) if tail else None


def derive_seed(master_seed: int, grid_index: int, realization: int) -> int:
    """64-bit run seed from SeedSequence's hash of the three integers."""
    ss = np.random.SeedSequence([int(master_seed), int(grid_index), int(realization)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class ExperimentPlan:
    name: str = "custom"
    base: SimParams = field(default_factory=SimParams)
    grid: list[tuple[float, float, int]] = field(default_factory=list)
    realizations: int = 100
    master_seed: int = 0
    snapshot_cycles: tuple[int, ...] = ()
    output_dir: str | None = None

    def params_at(self, grid_index: int) -> SimParams:
        cost, memory, n = self.grid[grid_index]
        return self.base.replace(cost=float(cost), memory=float(memory), n_agents=int(n))

    def validate(self) -> None:
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be an unsigned 64-bit integer")
        for gi in range(len(self.grid)):
            validate_params(self.params_at(gi))


@dataclass
class MetricSummary:
    mean: float | None
    std: float | None
    count: int


@dataclass
class AggregateRecord:
    grid_index: int
    cost: float
    memory: float
    n_agents: int
    realizations: int
    stats: dict[str, MetricSummary]

    def mean(self, metric: str) -> float | None:
        return self.stats[metric].mean

    @classmethod
    def columns(cls) -> list[str]:
        cols = ["grid_index", "cost", "memory", "n_agents", "realizations"]
        for m in METRIC_NAMES:
            cols += [f"{m}_mean", f"{m}_std", f"{m}_n"]
        return cols


def summarize(samples: Sequence[float | None]) -> MetricSummary:
    """Ensemble mean and sample std over the defined entries."""
    vals = np.array([s for s in samples if s is not None], dtype=float)
    if vals.size == 0:
        return MetricSummary(None, None, 0)
    std = float(vals.std(ddof=1)) if vals.size > 1 else None
    return MetricSummary(float(vals.mean()), std, int(vals.size))


def _realization(args):
    params, seed, snapshot_cycles, out_dir, tag = args
    result = run_single(params, seed=seed, snapshot_cycles=snapshot_cycles)
    if out_dir is not None:
        from . import io

        io.export_timeseries(result.series, Path(out_dir) / "series" / f"{tag}.csv.gz")
        for c in snapshot_cycles:
            if c in result.snapshots:
                io.export_snapshot(
                    result.snapshots[c], Path(out_dir) / "snapshots" / f"{tag}_c{c:06d}.json"
                )
    if not result.series:
        return {m: None for m in METRIC_NAMES}
    if len(result.series) == 1:
        return {m: getattr(result.series[0], m) for m in METRIC_NAMES}
    return {m: time_average(result.series, m) for m in METRIC_NAMES}


def run_ensemble(
    plan: ExperimentPlan,
    workers: int = 1,
    keep_series: bool = True,
    progress: Callable[[int, int], None] | None = None,
) -> list[AggregateRecord]:
    """Latter-half time averages of every realization, aggregated per grid point.

    With ``plan.output_dir`` set and ``keep_series`` true, every realization's
    raw series is written to ``<output_dir>/series``. Results are assembled in
    (grid index, realization) order whatever the number of workers.
    """
    plan.validate()
    out_dir = plan.output_dir if keep_series else None
    jobs = []
    for gi in range(len(plan.grid)):
        params = plan.params_at(gi)
        for r in range(plan.realizations):
            seed = derive_seed(plan.master_seed, gi, r)
            jobs.append((params, seed, tuple(plan.snapshot_cycles), out_dir, f"g{gi:03d}_r{r:03d}"))

    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            averages = list(pool.map(_realization, jobs))
    else:
        averages = []
        for i, job in enumerate(jobs):
            try:
                averages.append(_realization(job))
            except Exception as exc:
                raise RuntimeError(f"grid point {i // plan.realizations} failed: {exc}") from exc
            if progress is not None:
                progress(i + 1, len(jobs))

    records = []
    for gi, (cost, memory, n) in enumerate(plan.grid):
        chunk = averages[gi * plan.realizations:(gi + 1) * plan.realizations]
        stats = {m: summarize([a[m] for a in chunk]) for m in METRIC_NAMES}
        records.append(AggregateRecord(gi, float(cost), float(memory), int(n), plan.realizations, stats))
    return records


def _cartesian(costs, memories, populations):
    return [(float(c), float(g), int(n)) for n in populations for g in memories for c in costs]


def sweep_presets() -> dict[str, ExperimentPlan]:
    """Named sweep plans, N = 100 unless stated.

    fig3   strategies and hypergenerosity, c and gamma0 over {0, 2.5, 5, 7.5, 10}
    fig6   network properties against c (step 0.5) for five gamma0 values
    fig7   network properties against gamma0 (step 0.5) for five c values
    fig8   Gini coefficient, union of the fig6 and fig7 grids
    fig9   population sweep at c = 7.5, gamma0 = 2
    case_a / case_b, fig2 / fig4 / fig5   single runs with a final snapshot
    """
    base = SimParams()
    fig6 = _cartesian(HALF_STEPS, PAPER_VALUES, [100])
    fig7 = _cartesian(PAPER_VALUES, HALF_STEPS, [100])
    fig8 = list(dict.fromkeys(fig6 + fig7))
    last = (base.cycles,)
    return {
        "fig3": ExperimentPlan("fig3", base, _cartesian(PAPER_VALUES, PAPER_VALUES, [100])),
        "fig6": ExperimentPlan("fig6", base, fig6),
        "fig7": ExperimentPlan("fig7", base, fig7),
        "fig8": ExperimentPlan("fig8", base, fig8),
        "fig9": ExperimentPlan("fig9", base, _cartesian([7.5], [2.0], POPULATIONS)),
        "case_a": ExperimentPlan("case_a", base, [(5.0, 0.0, 100)], realizations=1, snapshot_cycles=last),
        "case_b": ExperimentPlan("case_b", base, [(0.0, 5.0, 100)], realizations=1, snapshot_cycles=last),
        "fig2": ExperimentPlan("fig2", base, [(5.0, 2.0, 100)], realizations=1, snapshot_cycles=last),
        "fig4": ExperimentPlan("fig4", base, [(7.5, 2.0, 100)], realizations=1, snapshot_cycles=last),
        "fig5": ExperimentPlan("fig5", base, [(7.5, 2.0, 400)], realizations=1, snapshot_cycles=last),
    }


# flat "key = value" plan files

_PARAM_TYPES = {f.name: f.type for f in fields(SimParams)}


def _convert(name: str, text: str):
    kind = _PARAM_TYPES.get(name)
    try:
        if kind == "int" or name in ("realizations", "master_seed", "snapshot_cycles"):
            return int(text)
        return float(text)
    except ValueError:
        raise ConfigError(f"bad value for {name}: {text!r}") from None


def plan_to_text(plan: ExperimentPlan) -> str:
    lines = [f"name = {plan.name}"]
    for key, value in plan.base.as_dict().items():
        lines.append(f"{key} = {value!r}")
    lines.append(f"realizations = {plan.realizations}")
    lines.append(f"master_seed = {plan.master_seed}")
    lines.append("grid = " + "; ".join(f"{c!r},{g!r},{n}" for c, g, n in plan.grid))
    lines.append("snapshot_cycles = " + ",".join(str(c) for c in plan.snapshot_cycles))
    lines.append(f"output_dir = {plan.output_dir or ''}")
    return "\n".join(lines) + "\n"


def plan_from_text(text: str) -> ExperimentPlan:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        raw[key] = value

    plan = ExperimentPlan()
    base = {}
    for key, value in raw.items():
        if key in _PARAM_TYPES:
            base[key] = _convert(key, value)
        elif key == "name":
            plan.name = value
        elif key in ("realizations", "master_seed"):
            setattr(plan, key, _convert(key, value))
        elif key == "grid":
            grid = []
            for item in filter(None, (s.strip() for s in value.split(";"))):
                try:
                    c, g, n = item.split(",")
                    grid.append((float(c), float(g), int(n)))
                except ValueError:
                    raise ConfigError(f"bad grid entry {item!r}") from None
            plan.grid = grid
        elif key == "snapshot_cycles":
            plan.snapshot_cycles = tuple(
                _convert("snapshot_cycles", s) for s in value.split(",") if s.strip()
            )
        elif key == "output_dir":
            plan.output_dir = value or None
        else:
            raise ConfigError(f"unknown key {key!r}")
    plan.base = SimParams(**base)
    return plan


def load_plan(path: str | os.PathLike) -> ExperimentPlan:
    return plan_from_text(Path(path).read_text())


def save_plan(plan: ExperimentPlan, path: str | os.PathLike) -> None:
    Path(path).write_text(plan_to_text(plan))
