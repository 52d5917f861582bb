from pathlib import Path

import numpy as np
import pytest

from hybrid_sizing.components import PVModuleSpec, WindTurbineSpec
from hybrid_sizing.config import parse_run_config
from hybrid_sizing.dispatch import BatterySpec
from hybrid_sizing.weather import HourlySeries, MonthlyClimate, Weather

ROOT = Path(__file__).resolve().parents[1]
SHIPPED_CONFIG = ROOT / "configs" / "dadakharka.json"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def shipped_config_path():
    return SHIPPED_CONFIG


@pytest.fixture(scope="session")
def run_config():
    return parse_run_config(SHIPPED_CONFIG)


@pytest.fixture
def pv175():
    return PVModuleSpec("toy-175", 176.0, 44.0, 5.2, 35.4, 4.95, 0.002, -0.12, 47.0, 24.0)


@pytest.fixture
def turbine1k():
    return WindTurbineSpec("toy-1k", 1000.0, 3.0, 10.0, 25.0, 10.0)


@pytest.fixture
def lossless_battery():
    return BatterySpec("ideal", 12.0, 100.0, 1.0, 1.0, 0.0, 0.2, 1.0)


@pytest.fixture
def battery():
    return BatterySpec("lead-acid", 6.0, 225.0, 0.85, 0.95, 5.5e-5, 0.4, 1.0)


@pytest.fixture
def flat_climate():
    return MonthlyClimate([5.0] * 12, 10.0, [15.0] * 12, [4.5] * 12, 27.4, 86.7)


def calm_dark_weather(temp=20.0):
    zeros = np.zeros(8760)
    return Weather(HourlySeries(zeros, "m/s"), HourlySeries(np.full(8760, temp), "degC"),
                   HourlySeries(zeros, "W/m2"), 10.0)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            if "test_acceptance.py::test_criterion_" in rep.nodeid:
                rows.append((rep.nodeid.split("::")[-1], "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(rows):
            terminalreporter.write_line(f"{status}  {name}")
