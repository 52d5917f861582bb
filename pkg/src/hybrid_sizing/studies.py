"""Comparisons built on the optimizer: existing vs proposed systems and
single-source versus hybrid feasibility under scaled wind regimes."""
from __future__ import annotations

from dataclasses import dataclass
import itertools

from .components import ShearModel
from .dispatch import LoadProfile, SystemConfiguration
from .economics import CostModel, ObjectiveWeights
from .optimizer import (
    ComponentSelection,
    EvaluationRecord,
    Evaluator,
    SearchBounds,
    make_configuration,
)
from .weather import MonthlyClimate, TemperatureModel, Weather, synthesize_weather


@dataclass(frozen=True)
class ArchitectureFeasibility:
    wind_mean: float
    pv_only: bool
    wind_only: bool
    hybrid: bool


def evaluate_configuration(
    config: SystemConfiguration, weather: Weather, load: LoadProfile, costs: CostModel,
    weights: ObjectiveWeights, lpsp_target: float, shear: ShearModel | None = None,
) -> EvaluationRecord:
    """Simulate and score a single configuration on a given weather year."""
    selection = ComponentSelection(config.pv_spec, config.wt_spec, config.bat_spec)
    return Evaluator(weather, load, selection, costs, weights, lpsp_target, shear)(config)


def compare(records: dict[str, EvaluationRecord]) -> list[dict]:
    """Flatten named evaluation records into rows for side-by-side reporting."""
    rows = []
    for name, rec in records.items():
        c = rec.config
        rows.append({
            "system": name,
            "pv_kw": c.pv_kw,
            "wt_kw": c.wt_kw,
            "bat_ah": c.bat_ah,
            "lpsp": rec.reliability.lpsp,
            "reliability": rec.reliability.reliability,
            "excess_fraction": rec.reliability.excess_fraction,
            "npc_usd": rec.econ.npc,
            "luec_usd_per_kwh": rec.econ.luec,
        })
    return rows


def _any_feasible(evaluator: Evaluator, selection, pv_range, wt_range, bat_range, bus_voltage, derate):
    for p, w, b in itertools.product(pv_range, wt_range, bat_range):
        config = make_configuration(selection, p, w, b, bus_voltage, derate)
        if evaluator(config).feasible:
            return True
    return False


def architecture_feasibility(
    site: MonthlyClimate, load: LoadProfile, selection: ComponentSelection, costs: CostModel,
    weights: ObjectiveWeights, bounds: SearchBounds, seed: int, wind_means, *,
    bus_voltage: float = 48.0, derate: float = 1.0, shear: ShearModel | None = None,
    temperature_model: TemperatureModel | None = None,
) -> list[ArchitectureFeasibility]:
    """Which architectures can meet the LPSP target as the site's wind is rescaled.

    For each annual mean wind speed the site's wind climate is rescaled (seasonal
    shape kept) and a PV-only search (no turbines), a wind-only search (no PV)
    and the hybrid search are run within ``bounds``.
    """
    out = []
    pv_r = range(1, bounds.n_pv_parallel_max + 1)
    wt_r = range(1, bounds.n_wt_max + 1)
    bat_r = range(1, bounds.n_bat_parallel_max + 1)
    for mean in wind_means:
        weather = synthesize_weather(site.scaled_wind(mean), seed, temperature_model)
        ev = Evaluator(weather, load, selection, costs, weights, bounds.lpsp_target, shear)
        out.append(ArchitectureFeasibility(
            wind_mean=float(mean),
            pv_only=_any_feasible(ev, selection, pv_r, [0], bat_r, bus_voltage, derate),
            wind_only=_any_feasible(ev, selection, [0], wt_r, bat_r, bus_voltage, derate),
            hybrid=_any_feasible(ev, selection, pv_r, wt_r, bat_r, bus_voltage, derate),
        ))
    return out
