"""Run configuration: JSON parsing, validation and serialization."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from importlib import resources
import json
from pathlib import Path

import jsonschema

from .components import PVModuleSpec, ShearModel, WindTurbineSpec
from .dispatch import BatterySpec, LoadProfile, SystemConfiguration
from .economics import ComponentCost, CostModel, ObjectiveWeights
from .optimizer import ComponentSelection, SearchBounds, make_configuration
from .weather import MonthlyClimate, TemperatureModel


class ConfigError(Exception):
    """Base class for run-configuration problems; ``path`` names the field."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ConfigFileError(ConfigError):
    """The file cannot be read."""


class ConfigSyntaxError(ConfigError):
    """The file is not valid JSON."""


class ConfigSchemaError(ConfigError):
    """The JSON does not match the published schema."""


class ConfigInvariantError(ConfigError):
    """Values are well-typed but violate a model constraint."""


def load_schema() -> dict:
    text = resources.files("hybrid_sizing").joinpath("data/run_config.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class Scenario:
    """A fixed configuration named in the run file, e.g. an installed system."""

    pv_module: str
    wind_turbine: str
    battery: str
    n_pv_parallel: int
    n_wt: int
    n_bat_parallel: int
    description: str = ""


@dataclass(frozen=True)
class Catalogs:
    pv_modules: dict
    wind_turbines: dict
    batteries: dict


@dataclass(frozen=True, eq=False)
class RunConfig:
    site: MonthlyClimate
    load: LoadProfile
    catalogs: Catalogs
    selection: tuple[str, str, str]
    costs: CostModel
    weights: ObjectiveWeights
    bounds: SearchBounds
    bus_voltage: float
    shear: ShearModel
    seed: int = 0
    derate: float = 1.0
    temperature_model: TemperatureModel = field(default_factory=TemperatureModel)
    output_dir: str = "out"
    scenarios: dict = field(default_factory=dict)

    def component_selection(self, pv=None, wt=None, bat=None) -> ComponentSelection:
        pv = pv or self.selection[0]
        wt = wt or self.selection[1]
        bat = bat or self.selection[2]
        return ComponentSelection(
            self.catalogs.pv_modules[pv], self.catalogs.wind_turbines[wt], self.catalogs.batteries[bat]
        )

    def configuration(self, n_pv_parallel, n_wt, n_bat_parallel, selection=None) -> SystemConfiguration:
        selection = selection or self.component_selection()
        return make_configuration(selection, n_pv_parallel, n_wt, n_bat_parallel, self.bus_voltage, self.derate)

    def scenario_configuration(self, name: str) -> SystemConfiguration:
        try:
            sc = self.scenarios[name]
        except KeyError:
            raise ConfigError(f"unknown scenario {name!r}; available: {sorted(self.scenarios)}") from None
        sel = self.component_selection(sc.pv_module, sc.wind_turbine, sc.battery)
        return self.configuration(sc.n_pv_parallel, sc.n_wt, sc.n_bat_parallel, sel)

    def to_dict(self) -> dict:
        return to_dict(self)

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return json.dumps(self.to_dict(), sort_keys=True) == json.dumps(other.to_dict(), sort_keys=True)


def _build(path, factory, *args, **kwargs):
    try:
        return factory(*args, **kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigInvariantError(str(exc), path) from None


def _without(d, *keys):
    return {k: v for k, v in d.items() if k not in keys}


def _schema_path(err) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def from_dict(doc) -> RunConfig:
    """Validate a decoded JSON document and build a :class:`RunConfig`."""
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ConfigSchemaError(err.message, _schema_path(err))

    s = doc["site"]
    site = _build(
        "site", MonthlyClimate,
        monthly_mean_wind=s["monthly_mean_wind"],
        anemometer_height=s["anemometer_height"],
        monthly_mean_temp=s["monthly_mean_temp"],
        monthly_mean_irradiation=s["monthly_mean_irradiation"],
        latitude=s["latitude"],
        longitude=s["longitude"],
        name=s.get("name", ""),
    )
    temp = _build("temperature_model", TemperatureModel, **doc.get("temperature_model", {}))

    ld = doc["load"]
    if "hourly_wh" in ld:
        load = _build("load", LoadProfile, ld["hourly_wh"], ld.get("description", ""))
    else:
        load = _build(
            "load", LoadProfile.two_level,
            ld["full_load_w"], ld.get("half_load_w"), ld.get("full_start_hour", 6),
            ld.get("full_end_hour", 22), ld.get("description", ""),
        )

    cat = doc["catalogs"]
    pv = {n: _build(f"catalogs/pv_modules/{n}", PVModuleSpec, name=n, **_without(v, "source"))
          for n, v in cat["pv_modules"].items()}
    wt = {n: _build(f"catalogs/wind_turbines/{n}", WindTurbineSpec, name=n, **_without(v, "source"))
          for n, v in cat["wind_turbines"].items()}
    bat = {n: _build(f"catalogs/batteries/{n}", BatterySpec, name=n, **_without(v, "source"))
           for n, v in cat["batteries"].items()}
    catalogs = Catalogs(pv, wt, bat)

    sel = doc["selection"]
    selection = (sel["pv_module"], sel["wind_turbine"], sel["battery"])
    _check_names("selection", selection, catalogs)

    c = doc["costs"]
    unit = {k: _build(f"costs/{k}", ComponentCost, **c[k]) for k in ("pv", "turbine", "battery", "bos")}
    overrides = {n: _build(f"costs/model_overrides/{n}", ComponentCost, **v)
                 for n, v in c.get("model_overrides", {}).items()}
    known = set(pv) | set(wt) | set(bat)
    for n in overrides:
        if n not in known:
            raise ConfigInvariantError(f"no catalog entry named {n!r}", f"costs/model_overrides/{n}")
    costs = _build("costs", CostModel, project_lifetime=c["project_lifetime"],
                   discount_rate=c["discount_rate"], model_overrides=overrides, **unit)

    weights = _build("weights", ObjectiveWeights, **doc.get("weights", {}))
    bounds = _build("bounds", SearchBounds, **doc["bounds"])
    shear = _build("shear", ShearModel, **doc.get("shear", {}))

    scenarios = {}
    for name, sc in doc.get("scenarios", {}).items():
        scenarios[name] = Scenario(
            pv_module=sc.get("pv_module", selection[0]),
            wind_turbine=sc.get("wind_turbine", selection[1]),
            battery=sc.get("battery", selection[2]),
            n_pv_parallel=sc["n_pv_parallel"],
            n_wt=sc["n_wt"],
            n_bat_parallel=sc["n_bat_parallel"],
            description=sc.get("description", ""),
        )
        _check_names(f"scenarios/{name}", (scenarios[name].pv_module, scenarios[name].wind_turbine,
                                          scenarios[name].battery), catalogs)

    cfg = RunConfig(
        site=site, load=load, catalogs=catalogs, selection=selection, costs=costs,
        weights=weights, bounds=bounds, bus_voltage=float(doc["bus_voltage"]), shear=shear,
        seed=int(doc.get("seed", 0)), derate=float(doc.get("derate", 1.0)),
        temperature_model=temp, output_dir=doc.get("output_dir", "out"), scenarios=scenarios,
    )
    # check that every referenced combination can be wired to the bus
    _build("selection", cfg.configuration, 1, 1, 1)
    for name in scenarios:
        _build(f"scenarios/{name}", cfg.scenario_configuration, name)
    return cfg


def _check_names(path, names, catalogs):
    for key, name, table in zip(("pv_module", "wind_turbine", "battery"), names,
                                (catalogs.pv_modules, catalogs.wind_turbines, catalogs.batteries)):
        if name not in table:
            raise ConfigInvariantError(f"no catalog entry named {name!r}", f"{path}/{key}")


def parse_run_config(path) -> RunConfig:
    """Read and validate a JSON run configuration file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise ConfigSyntaxError(f"{path} is not UTF-8 text") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def _plain(obj):
    return {f.name: getattr(obj, f.name) for f in fields(obj) if f.name != "name"}


def _floats(arr):
    return [float(x) for x in arr]


def to_dict(cfg: RunConfig) -> dict:
    """Serialize back to the JSON document structure."""
    cost = lambda u: asdict(u)  # noqa: E731
    return {
        "site": {
            "name": cfg.site.name,
            "latitude": cfg.site.latitude,
            "longitude": cfg.site.longitude,
            "anemometer_height": cfg.site.anemometer_height,
            "monthly_mean_wind": _floats(cfg.site.monthly_mean_wind),
            "monthly_mean_temp": _floats(cfg.site.monthly_mean_temp),
            "monthly_mean_irradiation": _floats(cfg.site.monthly_mean_irradiation),
        },
        "temperature_model": asdict(cfg.temperature_model),
        "load": {"description": cfg.load.description, "hourly_wh": _floats(cfg.load.hourly_load)},
        "catalogs": {
            "pv_modules": {n: _plain(v) for n, v in cfg.catalogs.pv_modules.items()},
            "wind_turbines": {n: _plain(v) for n, v in cfg.catalogs.wind_turbines.items()},
            "batteries": {n: _plain(v) for n, v in cfg.catalogs.batteries.items()},
        },
        "selection": dict(zip(("pv_module", "wind_turbine", "battery"), cfg.selection)),
        "costs": {
            "pv": cost(cfg.costs.pv),
            "turbine": cost(cfg.costs.turbine),
            "battery": cost(cfg.costs.battery),
            "bos": cost(cfg.costs.bos),
            "model_overrides": {n: cost(v) for n, v in cfg.costs.model_overrides.items()},
            "project_lifetime": cfg.costs.project_lifetime,
            "discount_rate": cfg.costs.discount_rate,
        },
        "weights": asdict(cfg.weights),
        "bounds": asdict(cfg.bounds),
        "bus_voltage": cfg.bus_voltage,
        "derate": cfg.derate,
        "shear": asdict(cfg.shear),
        "seed": cfg.seed,
        "output_dir": cfg.output_dir,
        "scenarios": {n: asdict(s) for n, s in cfg.scenarios.items()},
    }


def dumps(cfg: RunConfig) -> str:
    return json.dumps(to_dict(cfg), indent=2)
