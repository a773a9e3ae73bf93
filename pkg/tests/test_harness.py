import numpy as np
import pytest

from statusgame import harness
from statusgame.harness import (
    ExperimentPlan,
    derive_seed,
    plan_from_text,
    plan_to_text,
    run_ensemble,
    run_single,
    summarize,
    sweep_presets,
    time_average,
    window_average,
)
from statusgame.metrics import METRIC_NAMES
from statusgame.params import ConfigError, SimParams

SMALL = SimParams(n_agents=12, cost=2.0, memory=1.0, cycles=30)


def test_time_average_of_constant_series():
    assert time_average([3.0] * 10) == 3.0


def test_time_average_uses_latter_half():
    assert time_average([0.0, 0.0, 4.0, 8.0]) == 6.0
    # odd length: positions [ceil(5/2), 5) = 3, 4
    assert time_average([9.0, 9.0, 9.0, 1.0, 3.0]) == 2.0


def test_time_average_skips_undefined():
    assert time_average([1.0, 1.0, None, 5.0]) == 5.0
    assert time_average([1.0, 1.0, None, float("nan")]) is None


def test_time_average_needs_two_cycles():
    with pytest.raises(ValueError):
        time_average([])
    with pytest.raises(ValueError):
        time_average([1.0])


def test_window_average():
    series = [{"g": float(i)} for i in range(10)]
    assert window_average(series, "g", 0.1) == 9.0
    assert window_average(series, "g", 0.25) == 8.0  # last ceil(2.5) = 3 entries
    with pytest.raises(ValueError):
        window_average([], "g", 0.5)


def test_run_without_cycles_keeps_initial_world():
    res = run_single(SMALL.replace(cycles=0), snapshot_cycles=[0])
    assert res.series == []
    assert list(res.snapshots) == [0]
    assert res.final.cycle == 0
    assert not res.final.agents.wealth.any()


def test_run_records_every_cycle_and_snapshots():
    res = run_single(SMALL, snapshot_cycles=[0, 10], observer=lambda w: int(w.adjacency.sum()))
    assert [r.cycle for r in res.series] == list(range(1, 31))
    assert sorted(res.snapshots) == [0, 10, 30]
    assert res.snapshots[10].cycle == 10
    assert len(res.observations) == 30
    assert res.observations[-1] == int(res.final.adjacency.sum())


def test_run_seed_override():
    a = run_single(SMALL, seed=5)
    b = run_single(SMALL.replace(seed=5))
    assert a.params.seed == 5
    assert a.series == b.series


def test_derive_seed_is_stable_and_distinct():
    seeds = {derive_seed(0, g, r) for g in range(20) for r in range(50)}
    assert len(seeds) == 1000
    assert derive_seed(3, 1, 2) == derive_seed(3, 1, 2)
    assert derive_seed(3, 1, 2) != derive_seed(4, 1, 2)
    assert all(0 <= s < 2**64 for s in seeds)


def test_summarize():
    s = summarize([1.0, None, 3.0])
    assert (s.mean, s.count) == (2.0, 2)
    assert s.std == pytest.approx(np.sqrt(2.0))
    assert summarize([4.0]).std is None
    assert summarize([None, None]) == harness.MetricSummary(None, None, 0)


def test_single_point_ensemble_matches_its_run():
    plan = ExperimentPlan("one", SMALL, [(2.0, 1.0, 12)], realizations=1, master_seed=9)
    (rec,) = run_ensemble(plan)
    res = run_single(SMALL, seed=derive_seed(9, 0, 0))
    for m in METRIC_NAMES:
        expected = time_average(res.series, m)
        assert rec.mean(m) == expected
        assert rec.stats[m].count == (0 if expected is None else 1)


def test_ensemble_is_deterministic_and_ordered():
    plan = ExperimentPlan("two", SMALL, [(0.0, 1.0, 10), (5.0, 2.0, 14)], realizations=3, master_seed=1)
    calls = []
    a = run_ensemble(plan, progress=lambda i, n: calls.append((i, n)))
    b = run_ensemble(plan)
    assert a == b
    assert [r.grid_index for r in a] == [0, 1]
    assert [(r.cost, r.memory, r.n_agents) for r in a] == plan.grid
    assert calls[-1] == (6, 6)


def test_parallel_ensemble_matches_serial():
    plan = ExperimentPlan("par", SMALL.replace(cycles=10), [(1.0, 1.0, 8), (0.0, 0.0, 9)], realizations=2)
    assert run_ensemble(plan, workers=2) == run_ensemble(plan)


def test_ensemble_writes_series(tmp_path):
    plan = ExperimentPlan("w", SMALL.replace(cycles=5), [(1.0, 1.0, 8)], realizations=2,
                          snapshot_cycles=(5,), output_dir=str(tmp_path))
    run_ensemble(plan)
    assert sorted(p.name for p in (tmp_path / "series").iterdir()) == ["g000_r000.csv.gz", "g000_r001.csv.gz"]
    assert len(list((tmp_path / "snapshots").iterdir())) == 2


def test_presets():
    presets = sweep_presets()
    fig6 = presets["fig6"]
    assert len(fig6.grid) == 21 * 5
    assert sorted({g for _, g, _ in fig6.grid}) == [0.0, 2.5, 5.0, 7.5, 10.0]
    assert {n for *_, n in fig6.grid} == {100}
    fig7 = presets["fig7"]
    assert sorted({c for c, _, _ in fig7.grid}) == [0.0, 2.5, 5.0, 7.5, 10.0]
    assert len(presets["fig3"].grid) == 25
    fig9 = presets["fig9"]
    assert len(fig9.grid) == 8
    assert {(c, g) for c, g, _ in fig9.grid} == {(7.5, 2.0)}
    assert [n for *_, n in fig9.grid] == [50, 100, 150, 200, 250, 300, 350, 400]
    assert set(presets["fig8"].grid) == set(fig6.grid) | set(fig7.grid)
    assert presets["case_a"].grid == [(5.0, 0.0, 100)]
    assert presets["case_b"].grid == [(0.0, 5.0, 100)]
    for plan in presets.values():
        plan.validate()


@pytest.mark.parametrize("name", sorted(sweep_presets()))
def test_presets_round_trip_through_text(name):
    plan = sweep_presets()[name]
    text = plan_to_text(plan)
    assert plan_from_text(text) == plan
    assert plan_to_text(plan_from_text(text)) == text


def test_plan_text_round_trip_with_custom_fields():
    plan = ExperimentPlan("x", SimParams(n_agents=7, cost=0.1, seed=2**63), [(0.1, 0.2, 7)], 4, 11, (1, 5), "out")
    assert plan_from_text(plan_to_text(plan)) == plan


@pytest.mark.parametrize(
    "text",
    ["bogus = 1", "n_agents = many", "grid = 1,2", "realizations", "snapshot_cycles = 1,x"],
)
def test_plan_text_errors(text):
    with pytest.raises(ConfigError):
        plan_from_text(text)


def test_plan_validation():
    with pytest.raises(ConfigError):
        ExperimentPlan("bad", SMALL, [(1.0, 1.0, 0)]).validate()
    with pytest.raises(ConfigError):
        ExperimentPlan("bad", SMALL, [(1.0, 1.0, 5)], realizations=0).validate()
    with pytest.raises(ConfigError):
        run_ensemble(ExperimentPlan("bad", SMALL, [(-1.0, 1.0, 5)]))
