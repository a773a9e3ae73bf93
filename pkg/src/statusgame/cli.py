"""Command line interface: ``statusgame run|sweep|validate``.

Exit status is 0 on success, 1 for bad arguments or parameters and 2 when
an output file cannot be written.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io
from .harness import (
    ExperimentPlan,
    load_plan,
    run_ensemble,
    run_single,
    save_plan,
    sweep_presets,
)
from .params import ConfigError, SimParams, validate_params

OUTPUT_ENV = "STATUSGAME_OUTPUT_DIR"
EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _floats(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _default_out() -> str:
    return os.environ.get(OUTPUT_ENV, "statusgame-out")


def build_parser() -> argparse.ArgumentParser:
    d = SimParams()
    parser = _Parser(prog="statusgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="single simulation run")
    run.add_argument("--n", type=int, default=d.n_agents)
    run.add_argument("--cost", type=float, default=d.cost)
    run.add_argument("--memory", type=float, default=d.memory)
    run.add_argument("--stake", type=float, default=d.stake)
    run.add_argument("--steps", type=int, default=d.cycles)
    run.add_argument("--seed", type=int, default=d.seed)
    run.add_argument("--init-degree", type=float, default=d.init_mean_degree)
    run.add_argument("--snapshot-every", type=int, default=0, help="0 keeps only the final snapshot")
    run.add_argument("--out", default=None)

    sweep = sub.add_parser("sweep", help="ensemble runs over a parameter grid")
    sweep.add_argument("--preset", choices=sorted(sweep_presets()))
    sweep.add_argument("--config", help="plan file with 'key = value' lines")
    sweep.add_argument("--grid-c", type=_floats)
    sweep.add_argument("--grid-gamma", type=_floats)
    sweep.add_argument("--grid-n", type=_ints)
    sweep.add_argument("--realizations", type=int)
    sweep.add_argument("--seed", type=int, help="master seed")
    sweep.add_argument("--steps", type=int, help="override the cycle count")
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--no-series", action="store_true", help="skip per-run time series files")
    sweep.add_argument("--out", default=None)

    val = sub.add_parser("validate", help="report parameter-range warnings")
    val.add_argument("--n", type=int, default=d.n_agents)
    val.add_argument("--cost", type=float, default=d.cost)
    val.add_argument("--memory", type=float, default=d.memory)
    val.add_argument("--stake", type=float, default=d.stake)
    return parser


def _cmd_run(args) -> int:
    params = SimParams(
        n_agents=args.n,
        cost=args.cost,
        memory=args.memory,
        stake=args.stake,
        cycles=args.steps,
        init_mean_degree=args.init_degree,
        seed=args.seed,
    )
    for msg in validate_params(params):
        print(f"warning: {msg}", file=sys.stderr)
    every = args.snapshot_every
    wanted = range(every, params.cycles + 1, every) if every > 0 else ()
    result = run_single(params, snapshot_cycles=wanted)

    out = Path(args.out or _default_out())
    io.export_timeseries(result.series, out / "timeseries.csv")
    for cycle, world in result.snapshots.items():
        if cycle != result.final.cycle:
            io.export_snapshot(world, out / f"snapshot_{cycle:06d}.json")
    io.export_snapshot(result.final, out / "snapshot_final.json")
    save_plan(ExperimentPlan("run", params, [(params.cost, params.memory, params.n_agents)], 1,
                             params.seed), out / "plan.cfg")
    print(f"wrote {len(result.series)} cycles to {out}")
    return EXIT_OK


def _sweep_plan(args) -> ExperimentPlan:
    if args.preset and args.config:
        raise ConfigError("--preset and --config are mutually exclusive")
    if args.preset:
        plan = sweep_presets()[args.preset]
    elif args.config:
        try:
            plan = load_plan(args.config)
        except OSError as exc:
            raise ConfigError(f"cannot read {args.config}: {exc}") from exc
    else:
        plan = ExperimentPlan("custom")
    if args.grid_c or args.grid_gamma or args.grid_n:
        b = plan.base
        plan.grid = [
            (c, g, n)
            for n in (args.grid_n or [b.n_agents])
            for g in (args.grid_gamma or [b.memory])
            for c in (args.grid_c or [b.cost])
        ]
    if not plan.grid:
        raise ConfigError("empty grid: give --preset, --config or --grid-*")
    if args.realizations is not None:
        plan.realizations = args.realizations
    if args.seed is not None:
        plan.master_seed = args.seed
    if args.steps is not None:
        plan.base = plan.base.replace(cycles=args.steps)
        plan.snapshot_cycles = tuple(min(c, args.steps) for c in plan.snapshot_cycles)
    plan.output_dir = args.out or plan.output_dir or _default_out()
    return plan


def _cmd_sweep(args) -> int:
    plan = _sweep_plan(args)
    plan.validate()
    out = Path(plan.output_dir)
    records = run_ensemble(plan, workers=args.workers, keep_series=not args.no_series)
    io.export_aggregates(records, out / "aggregates.csv")
    save_plan(plan, out / "plan.cfg")
    print(f"wrote {len(records)} aggregate rows to {out / 'aggregates.csv'}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    params = SimParams(n_agents=args.n, cost=args.cost, memory=args.memory, stake=args.stake)
    msgs = validate_params(params)
    for msg in msgs:
        print(f"warning: {msg}")
    if not msgs:
        print("ok")
    return EXIT_OK


def cli_main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    handler = {"run": _cmd_run, "sweep": _cmd_sweep, "validate": _cmd_validate}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(cli_main())
