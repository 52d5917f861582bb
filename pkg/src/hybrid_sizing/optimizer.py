"""Exhaustive search over PV, turbine and battery string counts."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import itertools
import math

import numpy as np

from .components import PVModuleSpec, ShearModel, WindTurbineSpec
from .dispatch import (
    BatterySpec,
    LoadProfile,
    SimulationResult,
    SystemConfiguration,
    generation,
    run_dispatch,
    unit_outputs,
)
from .economics import (
    CostModel,
    EconomicMetrics,
    ObjectiveWeights,
    ReliabilityMetrics,
    compute_luec,
    compute_npc,
    compute_reliability,
    cost_function,
)
from .weather import MonthlyClimate, TemperatureModel, Weather, synthesize_weather

CSV_HEADER = (
    "n_pv_parallel,n_wt,n_bat_parallel,pv_kw,wt_kw,bat_ah,lpsp,reliability,"
    "excess_fraction,npc_usd,luec_usd_per_kwh,cf,feasible"
)


@dataclass(frozen=True)
class SearchBounds:
    n_pv_parallel_max: int
    n_wt_max: int
    n_bat_parallel_max: int
    lpsp_target: float = 0.0

    def __post_init__(self):
        for attr in ("n_pv_parallel_max", "n_wt_max", "n_bat_parallel_max"):
            v = getattr(self, attr)
            if int(v) != v or v < 1:
                raise ValueError(f"{attr} must be an integer >= 1")
        if not 0 <= self.lpsp_target <= 1:
            raise ValueError("lpsp_target must lie in [0, 1]")

    @property
    def size(self) -> int:
        return self.n_pv_parallel_max * self.n_wt_max * self.n_bat_parallel_max


@dataclass(frozen=True)
class ComponentSelection:
    """The one PV module, turbine and battery model used in a run."""

    pv: PVModuleSpec
    wt: WindTurbineSpec
    bat: BatterySpec


@dataclass(frozen=True)
class EvaluationRecord:
    config: SystemConfiguration
    reliability: ReliabilityMetrics
    econ: EconomicMetrics
    cf: float
    feasible: bool

    @property
    def counts(self) -> tuple[int, int, int]:
        c = self.config
        return c.n_pv_parallel, c.n_wt, c.n_bat_parallel

    def csv_row(self) -> str:
        c = self.config
        r = self.reliability
        e = self.econ
        fields = [
            str(c.n_pv_parallel),
            str(c.n_wt),
            str(c.n_bat_parallel),
            repr(c.pv_kw),
            repr(c.wt_kw),
            repr(c.bat_ah),
            repr(r.lpsp),
            repr(r.reliability),
            repr(r.excess_fraction),
            repr(e.npc),
            repr(e.luec),
            repr(self.cf),
            "true" if self.feasible else "false",
        ]
        return ",".join(fields)


@dataclass
class OptimizationReport:
    best: EvaluationRecord | None
    all_records: list[EvaluationRecord]
    pareto: list[EvaluationRecord]
    n_pruned: int = 0
    weather: Weather | None = field(default=None, repr=False, compare=False)

    def to_csv(self) -> str:
        return "\n".join([CSV_HEADER] + [rec.csv_row() for rec in self.all_records]) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def pv_series_count(pv: PVModuleSpec, bus_voltage: float) -> int:
    """Fewest modules in series whose nominal voltages reach the bus voltage."""
    return max(1, math.ceil(bus_voltage / pv.nominal_voltage - 1e-12))


def battery_series_count(bat: BatterySpec, bus_voltage: float) -> int:
    n = round(bus_voltage / bat.nominal_voltage)
    if n < 1 or n * bat.nominal_voltage != bus_voltage:
        raise ValueError(f"{bat.name} ({bat.nominal_voltage} V) cannot build a {bus_voltage} V bus")
    return n


def make_configuration(
    selection: ComponentSelection, n_pv_parallel: int, n_wt: int, n_bat_parallel: int,
    bus_voltage: float, derate: float = 1.0,
) -> SystemConfiguration:
    return SystemConfiguration(
        pv_spec=selection.pv,
        n_pv_series=pv_series_count(selection.pv, bus_voltage),
        n_pv_parallel=n_pv_parallel,
        wt_spec=selection.wt,
        n_wt=n_wt,
        bat_spec=selection.bat,
        n_bat_series=battery_series_count(selection.bat, bus_voltage),
        n_bat_parallel=n_bat_parallel,
        bus_voltage=bus_voltage,
        derate=derate,
    )


def enumerate_configurations(
    selection: ComponentSelection, bounds: SearchBounds, bus_voltage: float, derate: float = 1.0
) -> list[SystemConfiguration]:
    """All configurations within the bounds in (pv, wt, bat) lexicographic order."""
    # validate the bus once before building the product
    pv_series_count(selection.pv, bus_voltage)
    battery_series_count(selection.bat, bus_voltage)
    grid = itertools.product(
        range(1, bounds.n_pv_parallel_max + 1),
        range(1, bounds.n_wt_max + 1),
        range(1, bounds.n_bat_parallel_max + 1),
    )
    return [make_configuration(selection, p, w, b, bus_voltage, derate) for p, w, b in grid]


def score(result: SimulationResult, costs: CostModel, weights: ObjectiveWeights, lpsp_target: float) -> EvaluationRecord:
    rel = compute_reliability(result)
    npc = compute_npc(result.config, costs)
    served_kwh = result.energy_served / 1000.0
    if served_kwh > 0:
        econ = compute_luec(npc, served_kwh, costs)
        cf = cost_function(rel, econ, weights)
    else:
        econ = EconomicMetrics(npc=npc, annualized_cost=math.inf, luec=math.inf)
        cf = math.inf
    return EvaluationRecord(result.config, rel, econ, cf, rel.lpsp <= lpsp_target)


class Evaluator:
    """Simulates and scores configurations against one fixed weather year."""

    def __init__(self, weather: Weather, load: LoadProfile, selection: ComponentSelection,
                 costs: CostModel, weights: ObjectiveWeights, lpsp_target: float,
                 shear: ShearModel | None = None):
        self.pv_unit, self.wt_unit = unit_outputs(selection.pv, selection.wt, weather, shear)
        self.load = np.asarray(load.year(), dtype=float)
        self.costs = costs
        self.weights = weights
        self.lpsp_target = lpsp_target

    def simulate(self, config: SystemConfiguration) -> SimulationResult:
        e_pv, e_wt = generation(config, self.pv_unit, self.wt_unit)
        return run_dispatch(config, e_pv, e_wt, self.load)

    def __call__(self, config: SystemConfiguration) -> EvaluationRecord:
        return score(self.simulate(config), self.costs, self.weights, self.lpsp_target)


def sort_key(rec: EvaluationRecord):
    return (not rec.feasible, rec.cf) + rec.counts


def pareto_front(records: list[EvaluationRecord]) -> list[EvaluationRecord]:
    """Records not dominated in (lpsp, luec), sorted by lpsp.

    A record is dominated by one that is no worse in both and strictly better
    in at least one. Exact duplicates do not dominate each other.
    """
    if not records:
        raise ValueError("pareto_front needs at least one record")
    order = sorted(range(len(records)), key=lambda i: (records[i].reliability.lpsp, records[i].econ.luec, i))
    front = []
    best_before = math.inf  # lowest luec among strictly smaller lpsp
    i = 0
    while i < len(order):
        lpsp = records[order[i]].reliability.lpsp
        j = i
        while j < len(order) and records[order[j]].reliability.lpsp == lpsp:
            j += 1
        group = [records[k] for k in order[i:j]]
        group_min = group[0].econ.luec
        for rec in group:
            if rec.econ.luec == group_min and rec.econ.luec < best_before:
                front.append(rec)
        best_before = min(best_before, group_min)
        i = j
    return front


def _search(evaluator: Evaluator, configs: list[SystemConfiguration], workers: int):
    if workers <= 1:
        return [evaluator(c) for c in configs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves enumeration order, so the reduction below is order-stable
        return list(pool.map(evaluator, configs))


def _search_pruned(evaluator: Evaluator, configs: list[SystemConfiguration], bounds: SearchBounds):
    # Fewer PV strings never lowers the deficit, so once a (wt, bat) column is
    # infeasible at some PV count every smaller PV count is infeasible too.
    by_counts = {(c.n_pv_parallel, c.n_wt, c.n_bat_parallel): c for c in configs}
    records = []
    pruned = 0
    for w in range(1, bounds.n_wt_max + 1):
        for b in range(1, bounds.n_bat_parallel_max + 1):
            for p in range(bounds.n_pv_parallel_max, 0, -1):
                rec = evaluator(by_counts[(p, w, b)])
                records.append(rec)
                if not rec.feasible:
                    pruned += p - 1
                    break
    return records, pruned


def optimize_weather(
    weather: Weather, load: LoadProfile, selection: ComponentSelection, costs: CostModel,
    weights: ObjectiveWeights, bounds: SearchBounds, *, bus_voltage: float = 48.0,
    derate: float = 1.0, shear: ShearModel | None = None, workers: int = 1, prune: bool = False,
) -> OptimizationReport:
    """Search the bounded configuration space on an already synthesized year."""
    configs = enumerate_configurations(selection, bounds, bus_voltage, derate)
    evaluator = Evaluator(weather, load, selection, costs, weights, bounds.lpsp_target, shear)
    if prune:
        records, n_pruned = _search_pruned(evaluator, configs, bounds)
    else:
        records, n_pruned = _search(evaluator, configs, workers), 0
    records.sort(key=sort_key)
    best = records[0] if records and records[0].feasible else None
    return OptimizationReport(best, records, pareto_front(records), n_pruned, weather)


def optimize(
    site: MonthlyClimate, load: LoadProfile, selection: ComponentSelection, costs: CostModel,
    weights: ObjectiveWeights, bounds: SearchBounds, seed: int, *, bus_voltage: float = 48.0,
    derate: float = 1.0, shear: ShearModel | None = None,
    temperature_model: TemperatureModel | None = None, workers: int = 1, prune: bool = False,
) -> OptimizationReport:
    """Synthesize one weather year, then evaluate every configuration in ``bounds``.

    ``report.best`` is ``None`` when no configuration meets ``bounds.lpsp_target``.
    """
    weather = synthesize_weather(site, seed, temperature_model)
    return optimize_weather(
        weather, load, selection, costs, weights, bounds, bus_voltage=bus_voltage,
        derate=derate, shear=shear, workers=workers, prune=prune,
    )
