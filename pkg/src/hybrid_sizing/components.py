"""PV module and wind turbine output models.

Functions accept scalars or numpy arrays; array inputs are evaluated
element-wise and return arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STC_IRRADIANCE = 1000.0  # W/m2
STC_TEMPERATURE = 25.0  # degC
NOCT_IRRADIANCE = 800.0  # W/m2
NOCT_AMBIENT = 20.0  # degC


@dataclass(frozen=True)
class PVModuleSpec:
    """Datasheet parameters of one PV module.

    ``alpha_i`` is the short-circuit/MPP current coefficient in A/degC and
    ``beta_v`` the voltage coefficient in V/degC (negative).
    """

    name: str
    rated_power: float
    v_oc: float
    i_sc: float
    v_mp: float
    i_mp: float
    alpha_i: float
    beta_v: float
    noct: float
    nominal_voltage: float

    def __post_init__(self):
        if not 0 < self.v_mp < self.v_oc:
            raise ValueError(f"{self.name}: need 0 < v_mp < v_oc")
        if not 0 < self.i_mp < self.i_sc:
            raise ValueError(f"{self.name}: need 0 < i_mp < i_sc")
        if self.v_mp * self.i_mp > self.rated_power * 1.01:
            raise ValueError(f"{self.name}: v_mp * i_mp exceeds rated_power by more than 1%")
        if self.beta_v > 0:
            raise ValueError(f"{self.name}: beta_v must be <= 0")
        if self.alpha_i < 0:
            raise ValueError(f"{self.name}: alpha_i must be >= 0")
        if not 40 <= self.noct <= 60:
            raise ValueError(f"{self.name}: noct must lie in [40, 60] degC")
        if not self.nominal_voltage > 0:
            raise ValueError(f"{self.name}: nominal_voltage must be > 0")


@dataclass(frozen=True)
class WindTurbineSpec:
    name: str
    rated_power: float
    v_cut_in: float
    v_rated: float
    v_cut_out: float
    hub_height: float

    def __post_init__(self):
        if not 0 < self.v_cut_in < self.v_rated < self.v_cut_out:
            raise ValueError(f"{self.name}: need 0 < v_cut_in < v_rated < v_cut_out")
        if not self.rated_power > 0:
            raise ValueError(f"{self.name}: rated_power must be > 0")
        if not self.hub_height > 0:
            raise ValueError(f"{self.name}: hub_height must be > 0")


@dataclass(frozen=True)
class ShearModel:
    """Power-law wind shear, ``v2 = v1 * (h2 / h1) ** exponent``."""

    exponent: float = 1.0 / 7.0

    def __post_init__(self):
        if not 0 < self.exponent < 1:
            raise ValueError("shear exponent must lie in (0, 1)")


def _nonneg(name, x):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise ValueError(f"{name} must be non-negative")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def pv_cell_temperature(ambient, irradiance, noct):
    """Cell temperature from the NOCT energy balance.

    ``T_cell = T_amb + (NOCT - 20) / 800 * G``
    """
    g = _nonneg("irradiance", irradiance)
    t = np.asarray(ambient, dtype=float) + (noct - NOCT_AMBIENT) / NOCT_IRRADIANCE * g
    return _out(t)


def pv_module_power(spec: PVModuleSpec, irradiance, ambient):
    """Maximum-power-point output of one module [W].

    The MPP current scales with irradiance and shifts by ``alpha_i`` per degree
    away from 25 degC; the MPP voltage shifts by ``beta_v``. Output is zero in
    darkness and whenever the corrected current or voltage is non-positive.
    """
    g = _nonneg("irradiance", irradiance)
    tc = np.asarray(pv_cell_temperature(ambient, g, spec.noct))
    dt = tc - STC_TEMPERATURE
    current = spec.i_mp * (g / STC_IRRADIANCE) + spec.alpha_i * dt
    voltage = spec.v_mp + spec.beta_v * dt
    p = np.where((g > 0) & (current > 0) & (voltage > 0), current * voltage, 0.0)
    return _out(p)


def adjust_wind_to_hub(v_ref, h_ref: float, h_hub: float, shear: ShearModel | None = None):
    """Extrapolate wind speed from measurement height to hub height."""
    if not (h_ref > 0 and h_hub > 0):
        raise ValueError("heights must be > 0")
    shear = shear or ShearModel()
    v = _nonneg("wind speed", v_ref)
    return _out(v * (h_hub / h_ref) ** shear.exponent)


def wind_turbine_power(spec: WindTurbineSpec, v_hub):
    """Turbine output [W] from the cut-in/rated/cut-out power curve.

    Between cut-in and rated speed power rises with ``v**2``; intervals are
    half-open so exactly at cut-out the turbine is stopped.
    """
    v = _nonneg("wind speed", v_hub)
    vci2 = spec.v_cut_in * spec.v_cut_in
    ramp = spec.rated_power * (v * v - vci2) / (spec.v_rated * spec.v_rated - vci2)
    p = np.where(
        (v < spec.v_cut_in) | (v >= spec.v_cut_out),
        0.0,
        np.where(v < spec.v_rated, ramp, spec.rated_power),
    )
    return _out(p)
