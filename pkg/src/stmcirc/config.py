"""Flat ``key = value`` design configuration."""

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .bound import reflection_budget
from .errors import ConfigError
from .junction import JunctionParams

REQUIRED = (
    "junction.l0_nH", "junction.c0_pF", "junction.dc_ratio", "junction.fm_MHz",
    "junction.q0", "junction.z0_ohm",
    "spec.alpha_dB", "spec.beta_dB",
    "grid.f_start_MHz", "grid.f_stop_MHz", "grid.points",
)
OPTIONAL = (
    "synth.df_MHz", "synth.f_lo_MHz", "synth.f_hi_MHz", "synth.iterations",
    "filter.q",
    "sweep.fm_min", "sweep.fm_max", "sweep.fm_points",
    "sweep.dc_min", "sweep.dc_max", "sweep.dc_points", "sweep.workers",
)
INT_KEYS = {"grid.points", "synth.iterations", "sweep.fm_points", "sweep.dc_points", "sweep.workers"}


@dataclass(frozen=True)
class DesignConfig:
    junction: JunctionParams
    alpha_db: float
    beta_db: float
    f_start: float
    f_stop: float
    points: int
    df: float | None = None
    f_lo: float | None = None
    f_hi: float | None = None
    synth_iterations: int = 30
    filter_q: float | None = None
    sweep: dict = field(default_factory=dict)
    source: str = "<string>"

    @property
    def budget(self):
        return reflection_budget(self.alpha_db, self.beta_db)

    def freqs(self):
        return np.linspace(self.f_start, self.f_stop, self.points)


def parse_pairs(text, source="<string>"):
    """Raw ``{key: (value_text, line_number)}``; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if not key or not val:
            raise ConfigError(f"{source}:{lineno}: empty key or value")
        if key not in REQUIRED and key not in OPTIONAL:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r} (first on line {out[key][1]})")
        out[key] = (val, lineno)
    return out


def _number(pairs, key, source):
    val, lineno = pairs[key]
    try:
        if key in INT_KEYS:
            return int(val)
        x = float(val)
    except ValueError:
        raise ConfigError(f"{source}:{lineno}: {key} = {val!r} is not a number") from None
    if math.isnan(x):
        raise ConfigError(f"{source}:{lineno}: {key} is NaN")
    return x


def parse_config(text, source="<string>"):
    pairs = parse_pairs(text, source)
    missing = [k for k in REQUIRED if k not in pairs]
    if missing:
        raise ConfigError(f"{source}: missing required keys: {', '.join(missing)}")
    v = {k: _number(pairs, k, source) for k in pairs}

    def where(key):
        return f"{source}:{pairs[key][1]}"

    try:
        p = JunctionParams(
            l0=v["junction.l0_nH"] * 1e-9,
            c0=v["junction.c0_pF"] * 1e-12,
            dc_ratio=v["junction.dc_ratio"],
            fm=v["junction.fm_MHz"] * 1e6,
            q0=v["junction.q0"],
            z0=v["junction.z0_ohm"],
        )
    except ValueError as exc:
        raise ConfigError(f"{source}: invalid junction parameters: {exc}") from None
    for key in ("spec.alpha_dB", "spec.beta_dB"):
        if not v[key] > 0:
            raise ConfigError(f"{where(key)}: {key} must be positive")
    if not 0 < v["grid.f_start_MHz"] < v["grid.f_stop_MHz"]:
        raise ConfigError(f"{where('grid.f_stop_MHz')}: need 0 < grid.f_start_MHz < grid.f_stop_MHz")
    if v["grid.points"] < 3:
        raise ConfigError(f"{where('grid.points')}: grid.points must be at least 3")
    has_pair = "synth.f_lo_MHz" in v or "synth.f_hi_MHz" in v
    if has_pair and not ("synth.f_lo_MHz" in v and "synth.f_hi_MHz" in v):
        raise ConfigError(f"{source}: synth.f_lo_MHz and synth.f_hi_MHz must be given together")
    if has_pair and "synth.df_MHz" in v:
        raise ConfigError(f"{where('synth.df_MHz')}: synth.df_MHz conflicts with synth.f_lo_MHz/f_hi_MHz")
    if "synth.df_MHz" in v and not v["synth.df_MHz"] > 0:
        raise ConfigError(f"{where('synth.df_MHz')}: synth.df_MHz must be positive")
    if has_pair and not 0 < v["synth.f_lo_MHz"] < v["synth.f_hi_MHz"]:
        raise ConfigError(f"{where('synth.f_hi_MHz')}: need 0 < synth.f_lo_MHz < synth.f_hi_MHz")
    if "filter.q" in v and not v["filter.q"] > 0:
        raise ConfigError(f"{where('filter.q')}: filter.q must be positive")
    sweep = {k.split(".", 1)[1]: v[k] for k in v if k.startswith("sweep.")}

    def mhz(key):
        return v[key] * 1e6 if key in v else None

    return DesignConfig(
        junction=p,
        alpha_db=v["spec.alpha_dB"],
        beta_db=v["spec.beta_dB"],
        f_start=v["grid.f_start_MHz"] * 1e6,
        f_stop=v["grid.f_stop_MHz"] * 1e6,
        points=v["grid.points"],
        df=mhz("synth.df_MHz"),
        f_lo=mhz("synth.f_lo_MHz"),
        f_hi=mhz("synth.f_hi_MHz"),
        synth_iterations=v.get("synth.iterations", 30),
        filter_q=v.get("filter.q"),
        sweep=sweep,
        source=source,
    )


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, str(path))


def builtin_config(name="table1.cfg"):
    text = resources.files("stmcirc").joinpath("data", name).read_text()
    return parse_config(text, name)
