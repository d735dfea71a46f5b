"""Configuration parsing: sectioned key-value files, flag overrides, manifests.

Precedence: built-in defaults < config file < command-line flags. Unknown keys
and out-of-range values are rejected with the offending key named.
"""

from __future__ import annotations

import configparser
import json

from . import link
from .engine import SimulationConfig
from .geometry import LayoutKind
from .link import LinkBudget
from .propagation import NoiseConfig, PropagationConfig


class ConfigError(ValueError):
    pass


_LAYOUTS = {
    "3sector": LayoutKind.CLOVERLEAF_3,
    "6sector": LayoutKind.SNOWFLAKE_6,
    "12sector": LayoutKind.FLOWER_12,
}
_CASES = ("fixed", "switched", "adaptive")


def _positive(v):
    if v <= 0:
        raise ValueError("must be positive")
    return v


def _fraction(v):
    if not 0.0 < v <= 1.0:
        raise ValueError("must be in (0, 1]")
    return v


def _layout(v):
    if v not in _LAYOUTS:
        raise ValueError(f"expected one of {sorted(_LAYOUTS)}")
    return _LAYOUTS[v]


def _case(v):
    if v not in _CASES:
        raise ValueError(f"expected one of {_CASES}")
    return v


# section -> key -> (parser, validator or None)
_SCHEMA = {
    "grid": {
        "layout": (str, _layout),
        "isd_m": (float, _positive),
        "azimuth_offset_deg": (float, None),
    },
    "antenna": {
        "case": (str, _case),
        "front_to_back_db": (float, _positive),
    },
    "propagation": {
        "frequency_mhz": (float, _positive),
        "bs_height_m": (float, _positive),
        "ms_height_m": (float, _positive),
        "shadow_std_db": (float, None),
        "city_correction_db": (float, None),
        "min_distance_m": (float, _positive),
    },
    "link": {
        "hs_pdsch_power_dbm": (float, None),
        "hs_scch_power_dbm": (float, None),
        "total_codes": (int, _positive),
        "users_per_tti": (int, _positive),
        "loading": (float, _fraction),
        "activity_factor": (float, _fraction),
        "carriers": (int, _positive),
        "chip_rate_mcps": (float, _positive),
        "ue_noise_figure_db": (float, None),
        "alpha_at_site": (float, _fraction),
        "alpha_at_edge": (float, _fraction),
        "interference_margin_db": (float, None),
    },
    "mcs": {
        "table_csv": (str, None),
    },
    "run": {
        "iterations": (int, _positive),
        "seed": (int, None),
        "workers": (int, _positive),
    },
}


def _coerce(section: str, key: str, raw):
    try:
        spec = _SCHEMA[section][key]
    except KeyError:
        raise ConfigError(f"unknown configuration key [{section}] {key}") from None
    parse, validate = spec
    try:
        value = parse(raw) if isinstance(raw, str) else raw
        if validate is not None:
            value = validate(value)
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid value for [{section}] {key}: {raw!r} ({exc})") from None
    return value


def read_config_file(path) -> dict[str, dict]:
    """Read a sectioned key-value file (or a run manifest JSON) into a nested dict."""
    text = open(path).read()
    if str(path).endswith(".json"):
        manifest = json.loads(text)
        raw = manifest.get("config", manifest)
    else:
        parser = configparser.ConfigParser()
        parser.read_string(text)
        raw = {s: dict(parser.items(s)) for s in parser.sections()}
    out: dict[str, dict] = {}
    for section, items in raw.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown configuration section [{section}]")
        out[section] = {k: _coerce(section, k, v) for k, v in items.items()}
    return out


def merge(base: dict[str, dict], overrides: dict[str, dict]) -> dict[str, dict]:
    out = {s: dict(v) for s, v in base.items()}
    for section, items in overrides.items():
        for k, v in items.items():
            out.setdefault(section, {})[k] = _coerce(section, k, v)
    return out


def build_simulation_config(values: dict[str, dict]) -> SimulationConfig:
    """Resolve a nested config dict (already validated) into a SimulationConfig."""
    g = values.get("grid", {})
    a = values.get("antenna", {})
    p = values.get("propagation", {})
    ln = values.get("link", {})
    m = values.get("mcs", {})
    r = values.get("run", {})

    prop = PropagationConfig(
        frequency_mhz=p.get("frequency_mhz", 2100.0),
        bs_height_m=p.get("bs_height_m", 25.0),
        ms_height_m=p.get("ms_height_m", 1.5),
        city_correction_db=p.get("city_correction_db", 0.0),
        shadowing_std_db=p.get("shadow_std_db", 5.0),
        min_distance_m=p.get("min_distance_m", 35.0),
    )
    noise = NoiseConfig(
        chip_rate_mcps=ln.get("chip_rate_mcps", 3.84),
        ue_noise_figure_db=ln.get("ue_noise_figure_db", 8.0),
    )
    budget = LinkBudget(
        hs_pdsch_power_dbm=ln.get("hs_pdsch_power_dbm", 41.63),
        hs_scch_power_dbm=ln.get("hs_scch_power_dbm", 26.0),
        total_codes=ln.get("total_codes", 15),
        users_per_tti=ln.get("users_per_tti", 5),
        loading=ln.get("loading", 0.70),
        activity_factor=ln.get("activity_factor", 1.0),
        carriers=ln.get("carriers", 2),
        interference_margin_db=ln.get("interference_margin_db", 5.2),
    )
    table = link.mcs_table_from_csv(m["table_csv"]) if "table_csv" in m else link.default_mcs_table()
    try:
        return SimulationConfig(
            layout=g.get("layout", LayoutKind.CLOVERLEAF_3),
            case=a.get("case", "fixed"),
            isd_m=g.get("isd_m", 1000.0),
            azimuth_offset_deg=g.get("azimuth_offset_deg"),
            iterations=r.get("iterations", 5000),
            master_seed=r.get("seed", 1),
            front_to_back_db=a.get("front_to_back_db", 25.0),
            alpha_at_site=ln.get("alpha_at_site", 0.97),
            alpha_at_edge=ln.get("alpha_at_edge", 0.70),
            propagation=prop,
            noise=noise,
            link_budget=budget,
            mcs_table=table,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_config(file_path=None, overrides: dict[str, dict] | None = None) -> tuple[SimulationConfig, dict[str, dict]]:
    """Resolve file plus overrides; returns the config and the resolved mapping."""
    values = read_config_file(file_path) if file_path else {}
    if overrides:
        values = merge(values, overrides)
    return build_simulation_config(values), values


def config_to_mapping(values: dict[str, dict]) -> dict[str, dict]:
    """JSON-safe rendering of a resolved config mapping, for run manifests."""
    out = {}
    for section, items in values.items():
        out[section] = {}
        for k, v in items.items():
            if isinstance(v, LayoutKind):
                v = next(name for name, kind in _LAYOUTS.items() if kind is v)
            out[section][k] = v
    return out
