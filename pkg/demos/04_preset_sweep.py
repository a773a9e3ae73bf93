"""
A named sweep, shortened
========================

Presets carry the grids; cycles and realizations can be cut down for a
quick pass. The result is the same aggregates.csv the command line
``statusgame sweep`` writes.
"""
import argparse
import csv

from statusgame import sweep_presets, run_ensemble
from statusgame.io import export_aggregates

parser = argparse.ArgumentParser()
parser.add_argument("--preset", default="fig9", choices=sorted(sweep_presets()))
parser.add_argument("--cycles", type=int, default=500)
parser.add_argument("--realizations", type=int, default=2)
parser.add_argument("--out", default="demo-out/aggregates.csv")
args = parser.parse_args()

plan = sweep_presets()[args.preset]
plan.base = plan.base.replace(cycles=args.cycles)
plan.realizations = args.realizations
print(f"{plan.name}: {len(plan.grid)} grid points x {plan.realizations} realizations")

records = run_ensemble(plan, keep_series=False)
export_aggregates(records, args.out)

print(f"{'c':>5} {'g0':>5} {'N':>4} {'<k>':>7} {'max cl':>7} {'gini':>6} {'g_h':>6}")
for r in records:
    print(f"{r.cost:5.1f} {r.memory:5.1f} {r.n_agents:4d} {r.mean('avg_degree'):7.2f} "
          f"{r.mean('max_cluster'):7.1f} {r.mean('gini'):6.3f} {r.mean('hypergenerosity'):6.3f}")

with open(args.out) as fh:
    print("columns:", len(next(csv.reader(fh))))
