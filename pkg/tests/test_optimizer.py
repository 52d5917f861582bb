import itertools
import math

import numpy as np
import pytest

from hybrid_sizing.dispatch import BatterySpec, LoadProfile
from hybrid_sizing.economics import ComponentCost, CostModel, EconomicMetrics, ObjectiveWeights, ReliabilityMetrics
from hybrid_sizing.optimizer import (
    CSV_HEADER,
    ComponentSelection,
    EvaluationRecord,
    SearchBounds,
    battery_series_count,
    enumerate_configurations,
    make_configuration,
    optimize,
    optimize_weather,
    pareto_front,
    pv_series_count,
)
from hybrid_sizing.weather import synthesize_weather

from oracles import brute_force_best, naive_unit_outputs

COSTS = CostModel(
    pv=ComponentCost(2.0, 0.0, 0.01, 25),
    turbine=ComponentCost(3000, 2500, 80, 15),
    battery=ComponentCost(200, 200, 5, 6),
    bos=ComponentCost(2000, 0, 50, 25),
    project_lifetime=20,
    discount_rate=0.05,
)


@pytest.fixture
def toy(pv175, turbine1k, battery, flat_climate):
    return dict(
        weather=synthesize_weather(flat_climate, 11),
        load=LoadProfile.two_level(400.0, 200.0),
        selection=ComponentSelection(pv175, turbine1k, battery),
    )


def test_series_counts(pv175, battery):
    assert pv_series_count(pv175, 48) == 2
    assert pv_series_count(pv175, 24) == 1
    assert battery_series_count(battery, 48) == 8
    with pytest.raises(ValueError):
        battery_series_count(BatterySpec("odd", 5.0, 100, 0.9, 0.9, 0, 0.3, 1), 48)


def test_enumeration_order_and_size(toy):
    bounds = SearchBounds(3, 2, 4)
    configs = enumerate_configurations(toy["selection"], bounds, 48.0)
    assert len(configs) == bounds.size == 24
    counts = [(c.n_pv_parallel, c.n_wt, c.n_bat_parallel) for c in configs]
    assert counts == list(itertools.product(range(1, 4), range(1, 3), range(1, 5)))
    assert all(c.n_bat_series == 8 and c.n_pv_series == 2 for c in configs)


def test_bounds_invariants():
    with pytest.raises(ValueError):
        SearchBounds(0, 1, 1)
    with pytest.raises(ValueError):
        SearchBounds(1, 1, 1, lpsp_target=1.5)


def _rec(lpsp, luec, counts=(1, 1, 1)):
    rel = ReliabilityMetrics(lpsp, 1 - lpsp, 0.0, 1 - lpsp)
    cfg = type("C", (), dict(zip(("n_pv_parallel", "n_wt", "n_bat_parallel"), counts)))()
    return EvaluationRecord(cfg, rel, EconomicMetrics(0.0, 0.0, luec), lpsp + luec, True)


def test_pareto_examples():
    a, b, c = _rec(0.1, 1.0), _rec(0.2, 0.5), _rec(0.2, 0.9)
    assert pareto_front([a, b, c]) == [a, b]
    x, y = _rec(0.1, 0.5), _rec(0.1, 0.5)
    assert pareto_front([x, y]) == [x, y]
    with pytest.raises(ValueError):
        pareto_front([])


def _dominates(p, q):
    return (p.reliability.lpsp <= q.reliability.lpsp and p.econ.luec <= q.econ.luec
            and (p.reliability.lpsp < q.reliability.lpsp or p.econ.luec < q.econ.luec))


def test_pareto_matches_quadratic_definition():
    rng = np.random.default_rng(5)
    recs = [_rec(float(a), float(b)) for a, b in rng.integers(0, 6, size=(60, 2)) / 5]
    front = pareto_front(recs)
    expected = [r for r in recs if not any(_dominates(o, r) for o in recs)]
    assert sorted(map(id, front)) == sorted(map(id, expected))


def test_impossible_target_has_no_best(toy):
    tiny = LoadProfile.two_level(50_000.0)
    rep = optimize_weather(toy["weather"], tiny, toy["selection"], COSTS, ObjectiveWeights(),
                           SearchBounds(2, 1, 2, 0.0), bus_voltage=48.0)
    assert rep.best is None
    assert len(rep.all_records) == 4 and not any(r.feasible for r in rep.all_records)


def test_matches_brute_force(toy):
    bounds = SearchBounds(3, 2, 3, lpsp_target=0.05)
    w = ObjectiveWeights()
    rep = optimize_weather(toy["weather"], toy["load"], toy["selection"], COSTS, w, bounds, bus_voltage=48.0)
    configs = enumerate_configurations(toy["selection"], bounds, 48.0)
    pv_unit, wt_unit = naive_unit_outputs(toy["selection"].pv, toy["selection"].wt, toy["weather"], None)
    oracle = brute_force_best(configs, pv_unit, wt_unit, toy["load"].year().tolist(), COSTS, w, bounds.lpsp_target)
    assert oracle is not None and rep.best is not None
    assert rep.best.counts == (oracle[1].n_pv_parallel, oracle[1].n_wt, oracle[1].n_bat_parallel)
    assert rep.best.cf == pytest.approx(oracle[2], rel=1e-12)


def test_best_is_minimum_feasible(toy):
    rep = optimize_weather(toy["weather"], toy["load"], toy["selection"], COSTS, ObjectiveWeights(),
                           SearchBounds(3, 2, 3, 0.05), bus_voltage=48.0)
    feasible = [r for r in rep.all_records if r.feasible]
    assert rep.best.cf == min(r.cf for r in feasible)
    assert all(r.reliability.lpsp <= 0.05 for r in feasible)


def test_workers_identical_csv(toy):
    args = (toy["weather"], toy["load"], toy["selection"], COSTS, ObjectiveWeights(), SearchBounds(3, 2, 3, 0.05))
    one = optimize_weather(*args, bus_voltage=48.0, workers=1).to_csv()
    many = optimize_weather(*args, bus_voltage=48.0, workers=8).to_csv()
    assert one == many
    assert one.splitlines()[0] == CSV_HEADER
    assert len(one.splitlines()) == 1 + 18


def test_prune_keeps_best(toy):
    args = (toy["weather"], toy["load"], toy["selection"], COSTS, ObjectiveWeights(), SearchBounds(4, 2, 3, 0.02))
    full = optimize_weather(*args, bus_voltage=48.0)
    pruned = optimize_weather(*args, bus_voltage=48.0, prune=True)
    assert pruned.best.counts == full.best.counts and pruned.best.cf == full.best.cf
    assert len(pruned.all_records) + pruned.n_pruned == len(full.all_records)


def test_optimize_is_seeded(flat_climate, pv175, turbine1k, battery):
    sel = ComponentSelection(pv175, turbine1k, battery)
    args = (flat_climate, LoadProfile.two_level(300.0), sel, COSTS, ObjectiveWeights(), SearchBounds(2, 1, 2, 0.1))
    assert optimize(*args, seed=4).to_csv() == optimize(*args, seed=4).to_csv()
    assert optimize(*args, seed=4).to_csv() != optimize(*args, seed=5).to_csv()


def test_larger_bounds_never_worse(toy):
    w = ObjectiveWeights()
    small = optimize_weather(toy["weather"], toy["load"], toy["selection"], COSTS, w,
                             SearchBounds(2, 1, 2, 0.05), bus_voltage=48.0)
    large = optimize_weather(toy["weather"], toy["load"], toy["selection"], COSTS, w,
                             SearchBounds(3, 2, 3, 0.05), bus_voltage=48.0)
    if small.best is not None:
        assert large.best.cf <= small.best.cf


def test_record_csv_row(toy):
    cfg = make_configuration(toy["selection"], 2, 1, 1, 48.0)
    rec = EvaluationRecord(cfg, ReliabilityMetrics(0.25, 0.75, 0.1, 0.75), EconomicMetrics(1.0, 2.0, 0.5), 0.375, False)
    row = rec.csv_row().split(",")
    assert row[:3] == ["2", "1", "1"] and row[-1] == "false"
    assert float(row[3]) == cfg.pv_kw and math.isclose(float(row[11]), 0.375)
