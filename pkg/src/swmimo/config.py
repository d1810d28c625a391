"""Scenario configuration: INI-style sections, strict keys, range checks.

Example file::

    [grid]
    f_start_Hz = 1e8
    f_stop_Hz = 3e10
    delta_f_Hz = 1e8

    [array]
    n_r = 32
    regime = tight

Every key is optional; unknown sections or keys are errors.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from .circuit import KERNELS, REGIMES
from .analysis import POWER_POLICIES
from .fading import jakes_entry
from .geometry import FrequencyGrid, build_frequency_grid

__all__ = ["ConfigError", "ScenarioConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    pass


def _positive(name, v):
    if not v > 0:
        raise ConfigError(f"{name} must be > 0, got {v}")


def _nonneg(name, v):
    if not v >= 0:
        raise ConfigError(f"{name} must be >= 0, got {v}")


def _choice(name, v, options):
    if v not in options:
        raise ConfigError(f"{name} must be one of {sorted(options)}, got {v!r}")


@dataclass
class LinkSection:
    r_ohm: float = 1.0
    r_in_ohm: float = 1.0
    lna_gain: float = 10.0
    p_total_W: float = 2.0
    distance_m: float = 90.0
    gamma: float = 3.5
    theta_t_rad: float = 0.0
    theta_r_rad: float = 0.0
    g_t: float = 1.0
    g_r: float = 1.0
    power_policy: str = "total"

    def validate(self):
        for n in ("r_ohm", "r_in_ohm", "lna_gain", "p_total_W", "distance_m", "gamma", "g_t", "g_r"):
            _positive(f"link.{n}", getattr(self, n))
        for n in ("theta_t_rad", "theta_r_rad"):
            if not -math.pi / 2 <= getattr(self, n) <= math.pi / 2:
                raise ConfigError(f"link.{n} must lie in [-pi/2, pi/2]")
        _choice("link.power_policy", self.power_policy, POWER_POLICIES)


@dataclass
class GridSection:
    f_start_Hz: float = 1e8
    f_stop_Hz: float = 3e10
    delta_f_Hz: float = 1e7

    def validate(self):
        _positive("grid.f_start_Hz", self.f_start_Hz)
        _positive("grid.delta_f_Hz", self.delta_f_Hz)
        if not self.f_stop_Hz > self.f_start_Hz:
            raise ConfigError("grid.f_stop_Hz must exceed grid.f_start_Hz")


@dataclass
class ArraySection:
    n_r: int = 32
    n_t: int = 1
    spacing_m: float = 0.005
    regime: str = "tight"
    radius_r_m: float | None = None
    radius_t_m: float | None = None

    def validate(self):
        for n in ("n_r", "n_t"):
            if getattr(self, n) < 1:
                raise ConfigError(f"array.{n} must be >= 1")
        _positive("array.spacing_m", self.spacing_m)
        _choice("array.regime", self.regime, REGIMES)
        for n in ("radius_r_m", "radius_t_m"):
            v = getattr(self, n)
            if v is not None:
                _positive(f"array.{n}", v)


@dataclass
class CircuitSection:
    kernel: str = "cms"
    r_rad_ohm: float = 1.0

    def validate(self):
        _choice("circuit.kernel", self.kernel, KERNELS)
        _positive("circuit.r_rad_ohm", self.r_rad_ohm)


@dataclass
class NoiseSection:
    temperature_K: float = 290.0
    noise_figure_dB: float = 5.0

    def validate(self):
        _positive("noise.temperature_K", self.temperature_K)
        _nonneg("noise.noise_figure_dB", self.noise_figure_dB)


@dataclass
class FadingSection:
    tau_rms_ns: float = 2.0
    block_len: int = 512
    uncorrelated_threshold: float = 0.01
    asd_low_deg: float = 10.0
    asd_high_deg: float = 5.0
    cluster_angle_rad: float = 0.0
    k_mu_slope: float = 4.142
    k_mu_intercept: float = 0.246
    k_var_slope: float = 0.455
    k_var_intercept: float = 2.863
    k_draw: str = "per_trial"
    k_mode: str = "rician"
    seed: int = 0

    def validate(self):
        _positive("fading.tau_rms_ns", self.tau_rms_ns)
        if self.block_len < 1:
            raise ConfigError("fading.block_len must be >= 1")
        if not 0 < self.uncorrelated_threshold < 1:
            raise ConfigError("fading.uncorrelated_threshold must lie in (0, 1)")
        _nonneg("fading.asd_low_deg", self.asd_low_deg)
        _nonneg("fading.asd_high_deg", self.asd_high_deg)
        _choice("fading.k_draw", self.k_draw, {"per_trial", "per_run"})
        _choice("fading.k_mode", self.k_mode, {"rician", "rayleigh"})
        _nonneg("fading.seed", self.seed)


@dataclass
class RunSection:
    trials: int = 100

    def validate(self):
        if self.trials < 1:
            raise ConfigError(f"run.trials must be >= 1, got {self.trials}")


@dataclass
class ScenarioConfig:
    link: LinkSection = field(default_factory=LinkSection)
    grid: GridSection = field(default_factory=GridSection)
    array: ArraySection = field(default_factory=ArraySection)
    circuit: CircuitSection = field(default_factory=CircuitSection)
    noise: NoiseSection = field(default_factory=NoiseSection)
    fading: FadingSection = field(default_factory=FadingSection)
    run: RunSection = field(default_factory=RunSection)

    def validate(self) -> "ScenarioConfig":
        for f in fields(self):
            getattr(self, f.name).validate()
        grid = self.frequency_grid()
        n = self.fading.block_len
        if grid.count > 2 * n:
            dropped = jakes_entry(2 * n, grid.delta_f, self.fading.tau_rms_ns * 1e-9)
            if dropped > self.fading.uncorrelated_threshold:
                raise ConfigError(
                    f"fading.block_len={n} leaves correlation {dropped:.4f} at lag 2n, "
                    f"above uncorrelated_threshold={self.fading.uncorrelated_threshold}"
                )
        return self

    def frequency_grid(self) -> FrequencyGrid:
        return build_frequency_grid(self.grid.f_start_Hz, self.grid.f_stop_Hz, self.grid.delta_f_Hz)

    def replace(self, **sections) -> "ScenarioConfig":
        """Copy with per-section overrides, e.g. ``replace(array={"n_r": 4})``."""
        kwargs = {}
        for f in fields(self):
            sec = getattr(self, f.name)
            upd = sections.pop(f.name, None)
            kwargs[f.name] = dataclasses.replace(sec, **upd) if upd else dataclasses.replace(sec)
        if sections:
            raise ConfigError(f"unknown sections {sorted(sections)}")
        return ScenarioConfig(**kwargs).validate()

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _coerce(section: str, key: str, raw: str, ftype):
    raw = raw.strip()
    name = f"{section}.{key}"
    optional = "None" in str(ftype)
    try:
        if optional and raw.lower() in ("", "auto", "none"):
            return None
        if "int" in str(ftype) and "float" not in str(ftype):
            val = float(raw)
            if val != int(val):
                raise ValueError
            return int(val)
        if "float" in str(ftype):
            return float(raw)
        return raw
    except ValueError:
        raise ConfigError(f"{name}: cannot parse {raw!r} as {ftype}") from None


def parse_config(text: str, overrides: dict | None = None) -> ScenarioConfig:
    """Parse INI text; ``overrides`` maps ``"section.key"`` to raw string values."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}") from None
    for dotted, value in (overrides or {}).items():
        sec, _, key = dotted.partition(".")
        if not cp.has_section(sec):
            cp.add_section(sec)
        cp.set(sec, key, str(value))

    cfg = ScenarioConfig()
    known = {f.name: f for f in fields(cfg)}
    for sec in cp.sections():
        if sec not in known:
            raise ConfigError(f"unknown section [{sec}]; expected one of {sorted(known)}")
        target = getattr(cfg, sec)
        keys = {f.name: f for f in fields(target)}
        for key, raw in cp.items(sec):
            if key not in keys:
                raise ConfigError(f"unknown key {sec}.{key}; expected one of {sorted(keys)}")
            setattr(target, key, _coerce(sec, key, raw, keys[key].type))
    return cfg.validate()


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> ScenarioConfig:
    text = "" if path is None else Path(path).read_text()
    return parse_config(text, overrides)
