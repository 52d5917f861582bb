"""Synthetic hourly weather from monthly climate normals.

All three generators work on a fixed non-leap year of 8760 hours. Hour 0 is
January 1, 00:00 local solar time. Random draws come from numpy's PCG64 with
one independent substream per quantity, spawned from the master seed, so the
wind series does not change when the temperature generator is modified (and
vice versa).
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

HOURS_PER_YEAR = 8760
DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)

# spawn keys of the per-quantity substreams; never renumber
_STREAM_WIND = 0
_STREAM_TEMPERATURE = 1

UNITS = ("m/s", "degC", "W/m2")


def month_of_hour() -> np.ndarray:
    """Month index (0-11) of every hour of the year."""
    return np.repeat(np.arange(12), np.asarray(DAYS_IN_MONTH) * 24)


def day_of_year() -> np.ndarray:
    """Day number (1-365) of every hour of the year."""
    return np.repeat(np.arange(1, 366), 24)


def _twelve(name, values):
    arr = np.asarray(values, dtype=float)
    if arr.shape != (12,):
        raise ValueError(f"{name} must have exactly 12 monthly values, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MonthlyClimate:
    """Monthly means of wind speed, ambient temperature and horizontal irradiation.

    Parameters
    ----------
    monthly_mean_wind : sequence of 12 floats
        Mean wind speed at the anemometer height [m/s].
    anemometer_height : float
        Measurement height of the wind means [m].
    monthly_mean_temp : sequence of 12 floats
        Mean ambient temperature [degC].
    monthly_mean_irradiation : sequence of 12 floats
        Mean daily global horizontal irradiation [kWh/m2/day].
    latitude, longitude : float
        Site coordinates [degrees].
    """

    monthly_mean_wind: np.ndarray
    anemometer_height: float
    monthly_mean_temp: np.ndarray
    monthly_mean_irradiation: np.ndarray
    latitude: float
    longitude: float
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "monthly_mean_wind", _twelve("monthly_mean_wind", self.monthly_mean_wind))
        object.__setattr__(self, "monthly_mean_temp", _twelve("monthly_mean_temp", self.monthly_mean_temp))
        object.__setattr__(
            self, "monthly_mean_irradiation", _twelve("monthly_mean_irradiation", self.monthly_mean_irradiation)
        )
        if np.any(self.monthly_mean_wind < 0):
            raise ValueError("monthly_mean_wind must be >= 0")
        if np.any(self.monthly_mean_irradiation < 0):
            raise ValueError("monthly_mean_irradiation must be >= 0")
        if not self.anemometer_height > 0:
            raise ValueError("anemometer_height must be > 0")
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError("latitude must lie in [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError("longitude must lie in [-180, 180]")

    def scaled_wind(self, target_mean: float) -> "MonthlyClimate":
        """Copy of the climate with wind means rescaled to a new annual mean.

        The seasonal shape is kept; the annual mean is weighted by month length.
        """
        current = annual_mean(self.monthly_mean_wind)
        if current == 0:
            raise ValueError("cannot rescale an all-calm wind climate")
        return MonthlyClimate(
            monthly_mean_wind=self.monthly_mean_wind * (target_mean / current),
            anemometer_height=self.anemometer_height,
            monthly_mean_temp=self.monthly_mean_temp,
            monthly_mean_irradiation=self.monthly_mean_irradiation,
            latitude=self.latitude,
            longitude=self.longitude,
            name=self.name,
        )


def annual_mean(monthly) -> float:
    """Hour-weighted annual mean of 12 monthly values."""
    w = np.asarray(DAYS_IN_MONTH, dtype=float)
    return float(np.dot(np.asarray(monthly, dtype=float), w) / w.sum())


@dataclass(frozen=True)
class HourlySeries:
    """One year of hourly values of a single quantity."""

    values: np.ndarray
    unit: str

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.shape != (HOURS_PER_YEAR,):
            raise ValueError(f"an hourly series needs {HOURS_PER_YEAR} values, got shape {arr.shape}")
        if self.unit not in UNITS:
            raise ValueError(f"unknown unit {self.unit!r}; expected one of {UNITS}")
        if self.unit in ("m/s", "W/m2") and np.any(arr < 0):
            raise ValueError(f"{self.unit} series must be non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self):
        return HOURS_PER_YEAR

    def monthly_means(self) -> np.ndarray:
        months = month_of_hour()
        return np.array([self.values[months == m].mean() for m in range(12)])


@dataclass(frozen=True)
class TemperatureModel:
    """Diurnal-cosine-plus-Gaussian-noise temperature synthesis parameters."""

    amplitude: float = 5.0
    peak_hour: float = 15.0
    residual_std: float = 1.5

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("amplitude must be >= 0")
        if self.residual_std < 0:
            raise ValueError("residual_std must be >= 0")


@dataclass(frozen=True)
class Weather:
    """The three synthesized series used by the dispatch simulation."""

    wind: HourlySeries
    temperature: HourlySeries
    irradiance: HourlySeries
    wind_height: float = field(default=10.0)


def _check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return seed


def _substream(seed, key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(_check_seed(seed), spawn_key=(key,))
    return np.random.Generator(np.random.PCG64(ss))


def rayleigh_scale(mean_speed):
    """Rayleigh scale parameter giving the requested mean speed."""
    return np.asarray(mean_speed, dtype=float) / math.sqrt(math.pi / 2.0)


def synthesize_wind(climate: MonthlyClimate, seed: int) -> HourlySeries:
    """Hourly wind speed at anemometer height, Rayleigh-distributed per month.

    Samples use the inverse CDF ``sigma * sqrt(-2 ln(1 - u))`` of a uniform
    draw ``u`` in [0, 1), so a zero monthly mean gives exactly zero wind.
    """
    rng = _substream(seed, _STREAM_WIND)
    u = rng.random(HOURS_PER_YEAR)
    sigma = rayleigh_scale(climate.monthly_mean_wind)[month_of_hour()]
    v = sigma * np.sqrt(-2.0 * np.log1p(-u))
    return HourlySeries(v, "m/s")


def synthesize_temperature(
    climate: MonthlyClimate, seed: int, model: TemperatureModel | None = None
) -> HourlySeries:
    """Hourly ambient temperature: monthly mean + diurnal cosine + white noise."""
    model = model or TemperatureModel()
    rng = _substream(seed, _STREAM_TEMPERATURE)
    noise = rng.standard_normal(HOURS_PER_YEAR)
    hour_of_day = np.tile(np.arange(24, dtype=float), 365)
    diurnal = model.amplitude * np.cos(2.0 * math.pi * (hour_of_day - model.peak_hour) / 24.0)
    t = climate.monthly_mean_temp[month_of_hour()] + diurnal + model.residual_std * noise
    return HourlySeries(t, "degC")


def solar_declination(day) -> np.ndarray:
    """Solar declination in radians (Cooper's approximation)."""
    day = np.asarray(day, dtype=float)
    return np.radians(23.45) * np.sin(2.0 * math.pi * (284.0 + day) / 365.0)


def cos_zenith(latitude: float, day, solar_hour) -> np.ndarray:
    """Cosine of the solar zenith angle at a local solar time (hours)."""
    phi = math.radians(latitude)
    delta = solar_declination(day)
    omega = np.radians(15.0 * (np.asarray(solar_hour, dtype=float) - 12.0))
    return math.sin(phi) * np.sin(delta) + math.cos(phi) * np.cos(delta) * np.cos(omega)


def clear_sky_shape(latitude: float) -> np.ndarray:
    """Cosine-of-zenith at the middle of every hour, zero while the sun is down."""
    hour_of_day = np.tile(np.arange(24, dtype=float), 365)
    cz = cos_zenith(latitude, day_of_year(), hour_of_day + 0.5)
    return np.where(cz > 0.0, cz, 0.0)


def synthesize_irradiance(climate: MonthlyClimate) -> HourlySeries:
    """Deterministic hourly global horizontal irradiance [W/m2].

    The clear-sky cosine-of-zenith shape is rescaled month by month so the
    mean daily integral equals the monthly mean irradiation.
    """
    shape = clear_sky_shape(climate.latitude)
    months = month_of_hour()
    out = np.zeros(HOURS_PER_YEAR)
    for m, days in enumerate(DAYS_IN_MONTH):
        target = climate.monthly_mean_irradiation[m]
        if target == 0.0:
            continue
        sel = months == m
        total = shape[sel].sum()
        if total <= 0.0:
            raise ValueError(
                f"month {m + 1} has no daylight hours at latitude {climate.latitude} "
                "but a non-zero irradiation mean"
            )
        # kWh/m2/day -> Wh/m2 over the month; one-hour steps make W/m2 == Wh/m2
        out[sel] = shape[sel] * (target * 1000.0 * days / total)
    return HourlySeries(out, "W/m2")


def synthesize_weather(
    climate: MonthlyClimate, seed: int, temperature_model: TemperatureModel | None = None
) -> Weather:
    return Weather(
        wind=synthesize_wind(climate, seed),
        temperature=synthesize_temperature(climate, seed, temperature_model),
        irradiance=synthesize_irradiance(climate),
        wind_height=climate.anemometer_height,
    )


def write_weather_csv(weather: Weather, path) -> None:
    """Write ``hour,wind_ms,temp_c,ghi_wm2`` with 8760 data rows."""
    with open(path, "w", newline="") as fh:
        fh.write("hour,wind_ms,temp_c,ghi_wm2\n")
        for h, (w, t, g) in enumerate(
            zip(weather.wind.values.tolist(), weather.temperature.values.tolist(), weather.irradiance.values.tolist())
        ):
            fh.write(f"{h},{w!r},{t!r},{g!r}\n")
