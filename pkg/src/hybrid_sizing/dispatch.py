"""Hourly direct-mode energy balance of a PV/wind/battery system.

Each hour the renewable output serves the load first. Surplus charges the
battery until ``soc_max`` and the rest is dumped; a shortfall is drawn from
the battery down to ``soc_min`` and whatever remains is unserved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import math
from typing import NamedTuple

import numpy as np

from . import _dispatch_py
from .components import (
    PVModuleSpec,
    ShearModel,
    WindTurbineSpec,
    adjust_wind_to_hub,
    pv_module_power,
    wind_turbine_power,
)
from .kernels import dispatch_year
from .weather import HOURS_PER_YEAR, Weather

ENERGY_FIELDS = ("e_pv", "e_wt", "e_load", "e_charge", "e_discharge", "e_deficit", "e_waste")


@dataclass(frozen=True)
class BatterySpec:
    name: str
    nominal_voltage: float
    capacity_ah: float
    charge_efficiency: float
    discharge_efficiency: float
    self_discharge_hourly: float
    soc_min: float
    soc_max: float

    def __post_init__(self):
        if not self.nominal_voltage > 0:
            raise ValueError(f"{self.name}: nominal_voltage must be > 0")
        if not self.capacity_ah > 0:
            raise ValueError(f"{self.name}: capacity_ah must be > 0")
        for attr in ("charge_efficiency", "discharge_efficiency"):
            if not 0 < getattr(self, attr) <= 1:
                raise ValueError(f"{self.name}: {attr} must lie in (0, 1]")
        if not 0 <= self.self_discharge_hourly < 1:
            raise ValueError(f"{self.name}: self_discharge_hourly must lie in [0, 1)")
        if not 0 <= self.soc_min < self.soc_max <= 1:
            raise ValueError(f"{self.name}: need 0 <= soc_min < soc_max <= 1")


@dataclass(frozen=True)
class SystemConfiguration:
    """Component choice, counts and electrical layout of one candidate system.

    Generator counts may be zero to describe single-source reference systems;
    the optimizer itself only enumerates counts from 1 upwards.
    """

    pv_spec: PVModuleSpec
    n_pv_series: int
    n_pv_parallel: int
    wt_spec: WindTurbineSpec
    n_wt: int
    bat_spec: BatterySpec
    n_bat_series: int
    n_bat_parallel: int
    bus_voltage: float
    derate: float = 1.0

    def __post_init__(self):
        for attr in ("n_pv_series", "n_bat_series", "n_bat_parallel"):
            if int(getattr(self, attr)) != getattr(self, attr) or getattr(self, attr) < 1:
                raise ValueError(f"{attr} must be an integer >= 1")
        for attr in ("n_pv_parallel", "n_wt"):
            if int(getattr(self, attr)) != getattr(self, attr) or getattr(self, attr) < 0:
                raise ValueError(f"{attr} must be a non-negative integer")
        if self.n_bat_series * self.bat_spec.nominal_voltage != self.bus_voltage:
            raise ValueError(
                f"{self.n_bat_series} x {self.bat_spec.nominal_voltage} V batteries do not make "
                f"a {self.bus_voltage} V bus"
            )
        if self.n_pv_series * self.pv_spec.nominal_voltage < self.bus_voltage:
            raise ValueError("PV string voltage is below the bus voltage")
        if not 0 < self.derate <= 1:
            raise ValueError("derate must lie in (0, 1]")

    @property
    def n_pv(self) -> int:
        return self.n_pv_series * self.n_pv_parallel

    @property
    def n_bat(self) -> int:
        return self.n_bat_series * self.n_bat_parallel

    @property
    def pv_kw(self) -> float:
        return self.n_pv * self.pv_spec.rated_power / 1000.0

    @property
    def wt_kw(self) -> float:
        return self.n_wt * self.wt_spec.rated_power / 1000.0

    @property
    def bat_ah(self) -> float:
        """Bank capacity in Ah at bus voltage."""
        return self.n_bat_parallel * self.bat_spec.capacity_ah

    @property
    def capacity_wh(self) -> float:
        return battery_capacity_wh(self.bat_spec, self.n_bat_series, self.n_bat_parallel)


@dataclass(frozen=True)
class LoadProfile:
    """Hourly load in Wh, either one repeating day (24 values) or a full year."""

    hourly_load: np.ndarray
    description: str = ""

    def __post_init__(self):
        arr = np.array(self.hourly_load, dtype=float)
        if arr.ndim != 1 or arr.shape[0] not in (24, HOURS_PER_YEAR):
            raise ValueError("hourly_load needs 24 or 8760 values")
        if np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise ValueError("hourly_load values must be finite and >= 0")
        arr.setflags(write=False)
        object.__setattr__(self, "hourly_load", arr)

    @classmethod
    def two_level(cls, full_load, half_load=None, start_hour=6, end_hour=22, description=""):
        """Full load from ``start_hour`` (inclusive) to ``end_hour``, half load otherwise."""
        if half_load is None:
            half_load = full_load / 2.0
        if not 0 <= start_hour <= end_hour <= 24:
            raise ValueError("need 0 <= start_hour <= end_hour <= 24")
        day = np.full(24, float(half_load))
        day[start_hour:end_hour] = float(full_load)
        return cls(day, description)

    def year(self) -> np.ndarray:
        if self.hourly_load.shape[0] == HOURS_PER_YEAR:
            return self.hourly_load
        return np.tile(self.hourly_load, 365)


class HourlyEnergyRecord(NamedTuple):
    hour: int
    e_pv: float
    e_wt: float
    e_load: float
    e_charge: float
    e_discharge: float
    e_deficit: float
    e_waste: float
    soc: float


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """Hourly energy flows of one simulated year (all arrays of length 8760, Wh)."""

    config: SystemConfiguration
    e_pv: np.ndarray
    e_wt: np.ndarray
    e_load: np.ndarray
    e_charge: np.ndarray
    e_discharge: np.ndarray
    e_deficit: np.ndarray
    e_waste: np.ndarray
    soc_trace: np.ndarray
    capacity_wh: float = field(default=0.0)

    def __len__(self):
        return len(self.e_load)

    @property
    def records(self) -> list[HourlyEnergyRecord]:
        cols = [getattr(self, f).tolist() for f in ENERGY_FIELDS] + [self.soc_trace.tolist()]
        return [HourlyEnergyRecord(h, *row) for h, row in enumerate(zip(*cols))]

    @cached_property
    def totals(self) -> dict[str, float]:
        """Annual sums of each energy field (correctly rounded)."""
        return {f: math.fsum(getattr(self, f).tolist()) for f in ENERGY_FIELDS}

    @property
    def energy_served(self) -> float:
        return self.totals["e_load"] - self.totals["e_deficit"]

    def to_csv(self, path) -> None:
        header = "hour,e_pv_wh,e_wt_wh,e_load_wh,e_charge_wh,e_discharge_wh,e_deficit_wh,e_waste_wh,soc\n"
        with open(path, "w", newline="") as fh:
            fh.write(header)
            for rec in self.records:
                fh.write(",".join([str(rec.hour)] + [repr(x) for x in rec[1:]]) + "\n")


def battery_capacity_wh(spec: BatterySpec, n_series: int, n_parallel: int) -> float:
    """Nominal bank energy: ``n_series * V * n_parallel * Ah``."""
    if n_series < 1 or n_parallel < 1:
        raise ValueError("battery counts must be >= 1")
    return n_series * spec.nominal_voltage * n_parallel * spec.capacity_ah


def step_battery(soc: float, net: float, capacity: float, spec: BatterySpec):
    """Advance the battery by one hour given the signed net generation ``net`` [Wh].

    Self-discharge is applied first. Returns
    ``(soc, charged, discharged, waste, deficit)`` where ``charged`` is the
    energy stored after charge losses and ``discharged`` the energy delivered.
    """
    if not spec.soc_min <= soc <= spec.soc_max:
        raise ValueError(f"state of charge {soc} outside [{spec.soc_min}, {spec.soc_max}]")
    if not capacity > 0:
        raise ValueError("capacity must be > 0")
    return _dispatch_py.step(
        soc,
        net,
        capacity,
        spec.soc_min,
        spec.soc_max,
        spec.charge_efficiency,
        spec.discharge_efficiency,
        spec.self_discharge_hourly,
    )


def unit_outputs(pv_spec: PVModuleSpec, wt_spec: WindTurbineSpec, weather: Weather, shear: ShearModel | None = None):
    """Hourly output of a single PV module and a single turbine [Wh]."""
    pv = pv_module_power(pv_spec, weather.irradiance.values, weather.temperature.values)
    v_hub = adjust_wind_to_hub(weather.wind.values, weather.wind_height, wt_spec.hub_height, shear)
    wt = wind_turbine_power(wt_spec, v_hub)
    return np.asarray(pv, dtype=float), np.asarray(wt, dtype=float)


def generation(config: SystemConfiguration, pv_unit: np.ndarray, wt_unit: np.ndarray):
    """Array-level PV and wind energy for ``config`` from single-unit outputs."""
    e_pv = pv_unit * float(config.n_pv) * config.derate
    e_wt = wt_unit * float(config.n_wt) * config.derate
    return e_pv, e_wt


def run_dispatch(config: SystemConfiguration, e_pv, e_wt, e_load) -> SimulationResult:
    bat = config.bat_spec
    capacity = config.capacity_wh
    charge, discharge, deficit, waste, soc = dispatch_year(
        e_pv + e_wt,
        e_load,
        capacity,
        bat.soc_max,
        bat.soc_min,
        bat.soc_max,
        bat.charge_efficiency,
        bat.discharge_efficiency,
        bat.self_discharge_hourly,
    )
    return SimulationResult(config, e_pv, e_wt, e_load, charge, discharge, deficit, waste, soc, capacity)


def simulate_year(
    config: SystemConfiguration, weather: Weather, load: LoadProfile, shear: ShearModel | None = None
) -> SimulationResult:
    """Simulate one year of hourly operation starting from a full battery."""
    for series in (weather.wind, weather.temperature, weather.irradiance):
        if len(series.values) != HOURS_PER_YEAR:
            raise ValueError("weather series must have 8760 values")
    pv_unit, wt_unit = unit_outputs(config.pv_spec, config.wt_spec, weather, shear)
    e_pv, e_wt = generation(config, pv_unit, wt_unit)
    return run_dispatch(config, e_pv, e_wt, np.asarray(load.year(), dtype=float))
