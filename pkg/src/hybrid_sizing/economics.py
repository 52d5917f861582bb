"""Reliability and life-cycle cost scoring of a simulated year."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
import math

from .dispatch import SimulationResult, SystemConfiguration

COMPONENT_CLASSES = ("pv", "turbine", "battery", "bos")


@dataclass(frozen=True)
class ReliabilityMetrics:
    lpsp: float
    reliability: float
    excess_fraction: float
    renewable_contribution: float


@dataclass(frozen=True)
class ComponentCost:
    """Cost of one unit of a component class.

    The unit is one watt of PV, one turbine, one battery, or the whole
    balance of system.
    """

    capital: float
    replacement: float = 0.0
    om_annual: float = 0.0
    lifetime: float = 25.0

    def __post_init__(self):
        if min(self.capital, self.replacement, self.om_annual) < 0:
            raise ValueError("costs must be >= 0")
        if not self.lifetime > 0:
            raise ValueError("lifetime must be > 0")

    def scaled(self, factor: float) -> "ComponentCost":
        return replace(
            self,
            capital=self.capital * factor,
            replacement=self.replacement * factor,
            om_annual=self.om_annual * factor,
        )


@dataclass(frozen=True)
class CostModel:
    """Unit costs per component class plus the financial horizon.

    ``model_overrides`` maps a catalog entry name (e.g. a battery type) to the
    unit cost used instead of its class default.
    """

    pv: ComponentCost
    turbine: ComponentCost
    battery: ComponentCost
    bos: ComponentCost
    project_lifetime: float = 25.0
    discount_rate: float = 0.0
    model_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.project_lifetime > 0:
            raise ValueError("project_lifetime must be > 0")
        if self.discount_rate < 0:
            raise ValueError("discount_rate must be >= 0")

    def unit_cost(self, cls: str, model_name: str | None = None) -> ComponentCost:
        if model_name is not None and model_name in self.model_overrides:
            return self.model_overrides[model_name]
        return getattr(self, cls)

    def scaled(self, factor: float) -> "CostModel":
        return replace(
            self,
            pv=self.pv.scaled(factor),
            turbine=self.turbine.scaled(factor),
            battery=self.battery.scaled(factor),
            bos=self.bos.scaled(factor),
            model_overrides={k: v.scaled(factor) for k, v in self.model_overrides.items()},
        )


@dataclass(frozen=True)
class EconomicMetrics:
    npc: float
    annualized_cost: float
    luec: float


@dataclass(frozen=True)
class ObjectiveWeights:
    """Weights of the two cost-function terms.

    With ``literal=True`` the reliability term uses ``1 - lpsp`` exactly as the
    two-term formula is usually printed; the default uses ``lpsp`` so that
    minimizing rewards reliable systems.
    """

    w_reliability: float = 0.5
    w_luec: float = 0.5
    luec_normalizer: float = 1.0
    literal: bool = False

    def __post_init__(self):
        if min(self.w_reliability, self.w_luec) < 0:
            raise ValueError("weights must be >= 0")
        if not math.isclose(self.w_reliability + self.w_luec, 1.0, rel_tol=0, abs_tol=1e-12):
            raise ValueError("w_reliability + w_luec must equal 1")
        if not self.luec_normalizer > 0:
            raise ValueError("luec_normalizer must be > 0")


def compute_reliability(result: SimulationResult) -> ReliabilityMetrics:
    t = result.totals
    load = t["e_load"]
    if not load > 0:
        raise ValueError("annual load is zero; LPSP is undefined")
    lpsp = t["e_deficit"] / load
    generated = t["e_pv"] + t["e_wt"]
    excess = t["e_waste"] / generated if generated > 0 else 0.0
    return ReliabilityMetrics(
        lpsp=lpsp,
        reliability=1.0 - lpsp,
        excess_fraction=excess,
        renewable_contribution=(load - t["e_deficit"]) / load,
    )


def discount_factor(rate: float, year: float) -> float:
    return 1.0 / (1.0 + rate) ** year


def lifecycle_cost(unit: ComponentCost, quantity: float, project_lifetime: float, rate: float) -> float:
    """Present value of buying, replacing and maintaining ``quantity`` units.

    Replacements fall at whole multiples of the unit lifetime strictly before
    the end of the project; O&M is paid at the end of each project year.
    """
    if quantity == 0:
        return 0.0
    pv = unit.capital
    k = 1
    while k * unit.lifetime < project_lifetime:
        pv += unit.replacement * discount_factor(rate, k * unit.lifetime)
        k += 1
    for year in range(1, int(math.floor(project_lifetime)) + 1):
        pv += unit.om_annual * discount_factor(rate, year)
    return quantity * pv


def component_quantities(config: SystemConfiguration) -> dict[str, float]:
    return {
        "pv": config.n_pv * config.pv_spec.rated_power,
        "turbine": float(config.n_wt),
        "battery": float(config.n_bat),
        "bos": 1.0,
    }


def compute_npc(config: SystemConfiguration, costs: CostModel) -> float:
    """Net present cost of the configuration over the project lifetime [$]."""
    names = {
        "pv": config.pv_spec.name,
        "turbine": config.wt_spec.name,
        "battery": config.bat_spec.name,
        "bos": None,
    }
    qty = component_quantities(config)
    return math.fsum(
        lifecycle_cost(costs.unit_cost(cls, names[cls]), qty[cls], costs.project_lifetime, costs.discount_rate)
        for cls in COMPONENT_CLASSES
    )


def capital_recovery_factor(rate: float, years: float) -> float:
    if rate == 0:
        return 1.0 / years
    g = (1.0 + rate) ** years
    return rate * g / (g - 1.0)


def compute_luec(npc: float, annual_energy_served: float, costs: CostModel) -> EconomicMetrics:
    """Levelized cost per kWh served; ``annual_energy_served`` in kWh."""
    if not annual_energy_served > 0:
        raise ValueError("annual energy served must be > 0")
    annualized = npc * capital_recovery_factor(costs.discount_rate, costs.project_lifetime)
    return EconomicMetrics(npc=npc, annualized_cost=annualized, luec=annualized / annual_energy_served)


def cost_function(metrics: ReliabilityMetrics, econ: EconomicMetrics, weights: ObjectiveWeights) -> float:
    """Weighted scalar objective; lower is better."""
    first = metrics.reliability if weights.literal else metrics.lpsp
    return weights.w_reliability * first + weights.w_luec * (econ.luec / weights.luec_normalizer)
