from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hybrid_sizing.dispatch import SimulationResult
from hybrid_sizing.economics import (
    ComponentCost,
    CostModel,
    EconomicMetrics,
    ObjectiveWeights,
    ReliabilityMetrics,
    capital_recovery_factor,
    compute_luec,
    compute_npc,
    compute_reliability,
    cost_function,
    lifecycle_cost,
)


def _result(load, deficit, pv=None, waste=None):
    n = len(load)
    z = np.zeros(n)
    arr = lambda x: z if x is None else np.asarray(x, dtype=float)  # noqa: E731
    return SimulationResult(None, arr(pv), z, arr(load), z, z, arr(deficit), arr(waste), z)


def test_reliability_examples():
    m = compute_reliability(_result([100, 100, 100], [0, 0, 0]))
    assert (m.lpsp, m.reliability, m.renewable_contribution) == (0.0, 1.0, 1.0)
    m = compute_reliability(_result([100, 100, 100], [100, 100, 100]))
    assert m.lpsp == 1.0 and m.reliability == 0.0
    m = compute_reliability(_result([100, 100, 100], [0, 30, 0]))
    assert m.lpsp == pytest.approx(0.1, rel=1e-15)
    assert m.reliability == 1.0 - m.lpsp


def test_excess_fraction():
    m = compute_reliability(_result([100, 100], [0, 0], pv=[150, 250], waste=[20, 60]))
    assert m.excess_fraction == pytest.approx(0.2)


def test_reliability_rejects_zero_load():
    with pytest.raises(ValueError):
        compute_reliability(_result([0, 0], [0, 0]))


def _costs(rate=0.0, project=25.0, **unit):
    zero = ComponentCost(0.0, 0.0, 0.0, 100.0)
    parts = dict(pv=zero, turbine=zero, battery=zero, bos=zero)
    parts.update(unit)
    return CostModel(project_lifetime=project, discount_rate=rate, **parts)


class _Cfg:
    """Minimal stand-in exposing what compute_npc reads."""

    def __init__(self, n_pv=10, rated=100.0, n_wt=2, n_bat=8):
        self.n_pv, self.n_wt, self.n_bat = n_pv, n_wt, n_bat
        self.pv_spec = type("S", (), {"rated_power": rated, "name": "pv"})()
        self.wt_spec = type("S", (), {"name": "wt"})()
        self.bat_spec = type("S", (), {"name": "bat"})()


def test_npc_degenerate_is_capital_sum():
    costs = _costs(pv=ComponentCost(2.0, lifetime=30), turbine=ComponentCost(3000, lifetime=30),
                   battery=ComponentCost(150, lifetime=30), bos=ComponentCost(1000, lifetime=30))
    assert compute_npc(_Cfg(), costs) == 2.0 * 1000 + 3000 * 2 + 150 * 8 + 1000


def test_npc_hand_discounting():
    unit = ComponentCost(100.0, 0.0, 10.0, 25.0)
    expected = 100 + 10 / 1.1 + 10 / 1.21 + 10 / 1.331
    assert lifecycle_cost(unit, 1, 3, 0.10) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(124.87, abs=5e-3)
    costs = _costs(rate=0.10, project=3, bos=unit)
    assert compute_npc(_Cfg(), costs) == pytest.approx(expected, rel=1e-12)


def test_replacement_schedule():
    unit = ComponentCost(100.0, 80.0, 0.0, 5.0)
    # replacements at years 5, 10, 15; the one due at 20 == project end is excluded
    got = lifecycle_cost(unit, 1, 20, 0.05)
    expected = 100 + sum(80 / 1.05 ** t for t in (5, 10, 15))
    assert got == pytest.approx(expected, rel=1e-12)


def test_npc_zero_rate_no_replacements():
    costs = _costs(pv=ComponentCost(2.0, 0, 0.02, 50), bos=ComponentCost(500, 0, 40, 50), project=20)
    assert compute_npc(_Cfg(), costs) == pytest.approx(2.0 * 1000 + 0.02 * 1000 * 20 + 500 + 40 * 20, rel=1e-12)


def test_model_override_used():
    costs = _costs(battery=ComponentCost(100, lifetime=50))
    costs = replace(costs, model_overrides={"bat": ComponentCost(300, lifetime=50)})
    assert compute_npc(_Cfg(n_bat=2), costs) == 600


def test_npc_scale_property():
    costs = CostModel(ComponentCost(2.5, 0.3, 0.01, 25), ComponentCost(3200, 2700, 100, 15),
                      ComponentCost(180, 180, 5, 5), ComponentCost(5000, 2000, 100, 10), 25, 0.06,
                      {"bat": ComponentCost(450, 450, 5, 8)})
    npc = compute_npc(_Cfg(), costs)
    npc2 = compute_npc(_Cfg(), costs.scaled(2.0))
    assert npc2 == 2 * npc
    e1 = compute_luec(npc, 5000.0, costs)
    e2 = compute_luec(npc2, 5000.0, costs.scaled(2.0))
    assert e2.annualized_cost == 2 * e1.annualized_cost and e2.luec == 2 * e1.luec


def test_luec_examples():
    e = compute_luec(1000.0, 500.0, _costs(rate=0.0, project=10))
    assert e.annualized_cost == pytest.approx(100.0) and e.luec == pytest.approx(0.2)
    crf = 0.08 * 1.08 ** 20 / (1.08 ** 20 - 1)
    assert capital_recovery_factor(0.08, 20) == pytest.approx(crf, rel=1e-14)
    assert crf == pytest.approx(0.101852, abs=5e-7)
    e = compute_luec(1000.0, 500.0, _costs(rate=0.08, project=20))
    assert e.luec == pytest.approx(1000 * crf / 500, rel=1e-12)
    assert e.luec == pytest.approx(0.2037, abs=5e-5)


def test_luec_rejects_zero_energy():
    with pytest.raises(ValueError):
        compute_luec(1000.0, 0.0, _costs())


def test_cost_model_invariants():
    with pytest.raises(ValueError):
        ComponentCost(-1.0)
    with pytest.raises(ValueError):
        ComponentCost(1.0, lifetime=0)
    with pytest.raises(ValueError):
        _costs(rate=-0.01)


def _rel(lpsp):
    return ReliabilityMetrics(lpsp, 1 - lpsp, 0.0, 1 - lpsp)


def _econ(luec):
    return EconomicMetrics(0.0, 0.0, luec)


def test_cost_function_examples():
    assert cost_function(_rel(0.0), _econ(0.0), ObjectiveWeights()) == 0.0
    assert cost_function(_rel(0.37), _econ(1.4), ObjectiveWeights(1.0, 0.0)) == 0.37
    assert cost_function(_rel(0.2), _econ(0.9), ObjectiveWeights(0.5, 0.5, 1.0)) == pytest.approx(0.55)


def test_cost_function_literal_switch():
    w = ObjectiveWeights(0.5, 0.5, 1.0, literal=True)
    assert cost_function(_rel(0.2), _econ(0.9), w) == pytest.approx(0.5 * 0.8 + 0.45)


def test_weights_invariants():
    with pytest.raises(ValueError):
        ObjectiveWeights(0.6, 0.6)
    with pytest.raises(ValueError):
        ObjectiveWeights(0.5, 0.5, 0.0)


@given(
    w=st.floats(0, 1),
    a=st.floats(0, 1), b=st.floats(0, 1),
    x=st.floats(0, 10), y=st.floats(0, 10),
)
def test_cost_function_monotone(w, a, b, x, y):
    weights = ObjectiveWeights(w, 1.0 - w) if abs(w + (1.0 - w) - 1.0) <= 1e-12 else ObjectiveWeights()
    lo, hi = sorted((a, b))
    assert cost_function(_rel(lo), _econ(x), weights) <= cost_function(_rel(hi), _econ(x), weights)
    lo, hi = sorted((x, y))
    assert cost_function(_rel(a), _econ(lo), weights) <= cost_function(_rel(a), _econ(hi), weights)
