"""
Time evolution of a single run
==============================

Two contrasting settings: a living cost with no forgetting, and no cost
with strong forgetting. Prints a coarse table every few hundred cycles.
"""
import argparse

import numpy as np

from statusgame import SimParams, run_single, time_average

parser = argparse.ArgumentParser()
parser.add_argument("--cycles", type=int, default=3000)
parser.add_argument("--seed", type=int, default=1)
args = parser.parse_args()

cases = {"cost 5, no forgetting": (5.0, 0.0), "no cost, forgetting 5": (0.0, 5.0)}

for label, (cost, memory) in cases.items():
    params = SimParams(cost=cost, memory=memory, cycles=args.cycles, seed=args.seed)
    result = run_single(params)
    print(f"\n{label}")
    print(f"{'cycle':>6} {'<k>':>7} {'clusters':>8} {'gini':>6} {'max v':>9} {'<x>':>6} {'g_h':>5}")
    every = max(1, args.cycles // 10)
    for rec in result.series[every - 1::every]:
        print(f"{rec.cycle:6d} {rec.avg_degree:7.2f} {rec.n_clusters:8d} {rec.gini:6.3f} "
              f"{rec.max_wealth:9.1f} {rec.avg_strategy:6.3f} {rec.hypergenerosity:5.2f}")

    # the summary statistic used throughout: mean over the second half of the run
    print("latter-half g_h:", time_average(result.series, "hypergenerosity"))

    # the agents themselves: who is generous, who is rich
    agents = result.final.agents
    order = np.argsort(agents.wealth)[::-1][:5]
    print("richest five (wealth, strategy):",
          [(round(float(agents.wealth[i]), 1), round(float(agents.strategy[i]), 2)) for i in order])
