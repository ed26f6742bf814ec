"""Scenario configuration: a flat, typed key-value document.

Files are TOML with one level of tables; keys carry their units in the name
(degrees, GHz, dBi at this boundary only). Command-line ``--set section.key=value``
overrides take precedence over file values, which take precedence over the
built-in defaults (the reference scenario: 50% relative humidity, 101325 Pa,
296 K, 50/20 dBi terminal gains, |R| = 0.9, cosine element pattern).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, replace

try:
    import tomllib as tomli
except ModuleNotFoundError:
    import tomli

from .absorption import Environment
from .beam import SteeringTarget
from .errors import ConfigError
from .geometry import LinkGeometry, RisGeometry
from .linkbudget import RadiationPattern, RadioConfig

# section -> key -> (type, default)
SCHEMA: dict[str, dict[str, tuple[type, object]]] = {
    "geometry": {
        "M": (int, 100),
        "N": (int, 100),
        "dx_mm": (float, 0.3),
        "dy_mm": (float, 0.3),
    },
    "link": {
        "d1_m": (float, 1.0),
        "d2_m": (float, 10.0),
        "theta_i_deg": (float, 45.0),
        "phi_i_deg": (float, 180.0),
        "theta_r_deg": (float, 45.0),
        "phi_r_deg": (float, 45.0),
    },
    "target": {
        "theta_o_deg": (float, 45.0),
        "phi_o_deg": (float, 45.0),
    },
    "radio": {
        "f_ghz": (float, 380.0),
        "g_ap_dbi": (float, 50.0),
        "g_ue_dbi": (float, 20.0),
        "reflection": (float, 0.9),
        "pattern_q": (float, 1.0),
        "tx_power_w": (float, 1.0),
    },
    "environment": {
        "temperature_k": (float, 296.0),
        "pressure_pa": (float, 101325.0),
        "relative_humidity_pct": (float, 50.0),
    },
}


@dataclass(frozen=True)
class Scenario:
    """A fully resolved model scenario in SI units."""

    geom: RisGeometry
    link: LinkGeometry
    radio: RadioConfig
    env: Environment
    target: SteeringTarget
    include_absorption: bool = True


@dataclass(frozen=True)
class RunConfig:
    """Raw key-value configuration plus its provenance hash."""

    values: dict

    def get(self, section: str, key: str):
        return self.values[section][key]

    def config_hash(self) -> str:
        canonical = json.dumps(self.values, sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    def to_scenario(self, include_absorption: bool = True) -> Scenario:
        v = self.values
        try:
            geom = RisGeometry(
                num_rows=v["geometry"]["M"],
                num_cols=v["geometry"]["N"],
                pitch_x=v["geometry"]["dx_mm"] * 1e-3,
                pitch_y=v["geometry"]["dy_mm"] * 1e-3,
            )
            link = LinkGeometry(
                ap_distance=v["link"]["d1_m"],
                ue_distance=v["link"]["d2_m"],
                ap_elevation=math.radians(v["link"]["theta_i_deg"]),
                ap_azimuth=math.radians(v["link"]["phi_i_deg"]),
                ue_elevation=math.radians(v["link"]["theta_r_deg"]),
                ue_azimuth=math.radians(v["link"]["phi_r_deg"]),
            )
            radio = RadioConfig(
                frequency=v["radio"]["f_ghz"] * 1e9,
                ap_gain=10.0 ** (v["radio"]["g_ap_dbi"] / 10.0),
                ue_gain=10.0 ** (v["radio"]["g_ue_dbi"] / 10.0),
                reflection_magnitude=v["radio"]["reflection"],
                ru_pattern=RadiationPattern(v["radio"]["pattern_q"]),
                tx_power=v["radio"]["tx_power_w"],
            )
            env = Environment(
                temperature=v["environment"]["temperature_k"],
                pressure=v["environment"]["pressure_pa"],
                relative_humidity=v["environment"]["relative_humidity_pct"],
            )
            target = SteeringTarget(
                elevation=math.radians(v["target"]["theta_o_deg"]),
                azimuth=math.radians(v["target"]["phi_o_deg"]),
            )
        except (ValueError, KeyError) as exc:
            raise ConfigError(str(exc)) from exc
        return Scenario(geom, link, radio, env, target, include_absorption)

    def dump_toml(self) -> str:
        lines = []
        for section in SCHEMA:
            lines.append(f"[{section}]")
            for key in SCHEMA[section]:
                val = self.values[section][key]
                lines.append(f"{key} = {val}")
            lines.append("")
        return "\n".join(lines)


def _coerce(section: str, key: str, value) -> object:
    if section not in SCHEMA or key not in SCHEMA[section]:
        raise ConfigError(f"unknown configuration key '{section}.{key}'")
    typ, _ = SCHEMA[section][key]
    if typ is int:
        if isinstance(value, bool) or (isinstance(value, float) and value != int(value)):
            raise ConfigError(f"'{section}.{key}' must be an integer, got {value!r}")
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"'{section}.{key}' must be an integer, got {value!r}") from exc
    try:
        out = float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{section}.{key}' must be a number, got {value!r}") from exc
    if not math.isfinite(out):
        raise ConfigError(f"'{section}.{key}' must be finite, got {value!r}")
    return out


def default_values() -> dict:
    return {sec: {k: d for k, (_, d) in keys.items()} for sec, keys in SCHEMA.items()}


def load_config(path: str | None = None,
                overrides: list[str] | None = None) -> RunConfig:
    """Build a RunConfig from defaults, an optional TOML file, and overrides.

    Overrides are 'section.key=value' strings and win over file values.
    """
    values = default_values()
    if path is not None:
        try:
            with open(path, "rb") as fh:
                doc = tomli.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except tomli.TOMLDecodeError as exc:
            raise ConfigError(f"invalid config file {path}: {exc}") from exc
        for section, table in doc.items():
            if not isinstance(table, dict):
                raise ConfigError(f"top-level key '{section}' must be a table")
            for key, val in table.items():
                values.setdefault(section, {})
                values[section][key] = _coerce(section, key, val)
    for item in overrides or []:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"override must look like section.key=value, got {item!r}")
        dotted, raw = item.split("=", 1)
        section, key = dotted.split(".", 1)
        if section not in SCHEMA or key not in SCHEMA[section]:
            raise ConfigError(f"unknown configuration key '{section}.{key}'")
        typ, _ = SCHEMA[section][key]
        try:
            parsed = int(raw) if typ is int else float(raw)
        except ValueError as exc:
            raise ConfigError(f"cannot parse {raw!r} for '{section}.{key}'") from exc
        values[section][key] = _coerce(section, key, parsed)
    return RunConfig(values)


def scenario_replace(scn: Scenario, **kwargs) -> Scenario:
    """dataclasses.replace that reaches one level into the nested configs."""
    return replace(scn, **kwargs)
