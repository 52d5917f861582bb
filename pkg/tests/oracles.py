"""Independent re-implementations used as test oracles.

These deliberately avoid the package's vectorized paths: per-hour Python
loops over ``step_battery`` for dispatch and hand-written discounting for
costs.
"""
import math

import numpy as np

from hybrid_sizing.components import adjust_wind_to_hub, pv_module_power, wind_turbine_power
from hybrid_sizing.dispatch import step_battery


def naive_unit_outputs(pv, wt, weather, shear):
    """Per-unit hourly PV and turbine energy, one scalar call per hour."""
    n = len(weather.wind.values)
    e_pv = np.empty(n)
    e_wt = np.empty(n)
    for h in range(n):
        e_pv[h] = pv_module_power(pv, float(weather.irradiance.values[h]), float(weather.temperature.values[h]))
        v = adjust_wind_to_hub(float(weather.wind.values[h]), weather.wind_height, wt.hub_height, shear)
        e_wt[h] = wind_turbine_power(wt, v)
    return e_pv, e_wt


def naive_dispatch(config, pv_unit, wt_unit, load):
    """Hour-by-hour dispatch; returns deficit, waste and served totals."""
    bat = config.bat_spec
    cap = config.capacity_wh
    soc = bat.soc_max
    deficit, waste, served, gen = [], [], [], []
    for h in range(len(load)):
        g = pv_unit[h] * float(config.n_pv) * config.derate + wt_unit[h] * float(config.n_wt)
        soc, _, _, w, d = step_battery(soc, g - load[h], cap, bat)
        deficit.append(d)
        waste.append(w)
        served.append(load[h] - d)
        gen.append(g)
    return math.fsum(deficit), math.fsum(waste), math.fsum(served), math.fsum(gen)


def naive_npc(config, costs):
    n = costs.project_lifetime
    d = costs.discount_rate
    parts = [
        (costs.unit_cost("pv", config.pv_spec.name), config.n_pv * config.pv_spec.rated_power),
        (costs.unit_cost("turbine", config.wt_spec.name), config.n_wt),
        (costs.unit_cost("battery", config.bat_spec.name), config.n_bat),
        (costs.bos, 1),
    ]
    total = 0.0
    for unit, qty in parts:
        if qty == 0:
            continue
        total += unit.capital * qty
        t = unit.lifetime
        while t < n:
            total += unit.replacement * qty / (1 + d) ** t
            t += unit.lifetime
        total += sum(unit.om_annual * qty / (1 + d) ** y for y in range(1, int(n) + 1))
    return total


def naive_evaluate(config, pv_unit, wt_unit, load, costs, weights, target):
    """(lpsp, npc, luec, cf, feasible) for one configuration."""
    deficit, _, served, _ = naive_dispatch(config, pv_unit, wt_unit, load)
    lpsp = deficit / math.fsum(load)
    npc = naive_npc(config, costs)
    d, n = costs.discount_rate, costs.project_lifetime
    crf = 1 / n if d == 0 else d * (1 + d) ** n / ((1 + d) ** n - 1)
    luec = npc * crf / (served / 1000.0)
    rel_term = (1 - lpsp) if weights.literal else lpsp
    cf = weights.w_reliability * rel_term + weights.w_luec * luec / weights.luec_normalizer
    return lpsp, npc, luec, cf, lpsp <= target


def brute_force_best(configs, pv_unit, wt_unit, load, costs, weights, target):
    """Minimum-CF feasible configuration, ties broken by smaller counts."""
    best = None
    for c in configs:
        lpsp, npc, luec, cf, ok = naive_evaluate(c, pv_unit, wt_unit, load, costs, weights, target)
        if not ok:
            continue
        key = (cf, c.n_pv_parallel, c.n_wt, c.n_bat_parallel)
        if best is None or key < best[0]:
            best = (key, c, cf)
    return best
