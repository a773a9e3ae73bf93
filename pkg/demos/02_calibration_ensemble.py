"""
Ensemble average at one grid point
==================================

Realizations are seeded from a master seed, the grid index and the
realization index, so any single run can be redone in isolation.
"""
import argparse

from statusgame import ExperimentPlan, SimParams, derive_seed, run_ensemble

parser = argparse.ArgumentParser()
parser.add_argument("--realizations", type=int, default=5)
parser.add_argument("--cycles", type=int, default=4000)
parser.add_argument("--workers", type=int, default=1)
args = parser.parse_args()

plan = ExperimentPlan(
    name="calibration",
    base=SimParams(cycles=args.cycles),
    grid=[(7.5, 2.0, 100)],
    realizations=args.realizations,
    master_seed=7,
)


def progress(done, total):
    print(f"  run {done}/{total}", end="\r")


(rec,) = run_ensemble(plan, workers=args.workers, progress=progress)
print()
for name in ("hypergenerosity", "avg_strategy", "avg_degree", "avg_clustering", "gini"):
    s = rec.stats[name]
    spread = "" if s.std is None else f" +- {s.std:.3f}"
    print(f"{name:>16}: {s.mean:.3f}{spread}  (n={s.count})")

# realization 3 of grid point 0 always uses this seed
print("seed of realization 3:", derive_seed(plan.master_seed, 0, 3))
