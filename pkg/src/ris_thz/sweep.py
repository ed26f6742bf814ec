"""Grid evaluation engine: 1-D and 2-D parameter sweeps over the model.

Rows are emitted in deterministic row-major order (outer axis major); cells
are independent, so the engine can evaluate them in a process pool and still
assemble byte-identical output.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import __version__
from .absorption import absorption_coefficient_env
from .beam import optimal_phase_profile, steering_coefficients
from .config import Scenario
from .errors import ConfigError, RisThzError, SingularGeometryError
from .linkbudget import pathloss
from .oracle import MODE_EXACT, MODE_TAYLOR, total_field

# Swept parameter -> (output column name, setter on Scenario).
def _set_link(attr):
    return lambda s, v: replace(s, link=replace(s.link, **{attr: v}))


def _set_env(attr):
    return lambda s, v: replace(s, env=replace(s.env, **{attr: v}))


def _set_radio(attr):
    return lambda s, v: replace(s, radio=replace(s.radio, **{attr: v}))


def _set_geom_count(attr):
    return lambda s, v: replace(s, geom=replace(s.geom, **{attr: int(round(v))}))


def _set_target(attr):
    return lambda s, v: replace(s, target=replace(s.target, **{attr: v}))


PARAMETERS = {
    "phi_r": ("phi_r_rad", _set_link("ue_azimuth")),
    "theta_r": ("theta_r_rad", _set_link("ue_elevation")),
    "phi_i": ("phi_i_rad", _set_link("ap_azimuth")),
    "theta_i": ("theta_i_rad", _set_link("ap_elevation")),
    "d1": ("d1_m", _set_link("ap_distance")),
    "d2": ("d2_m", _set_link("ue_distance")),
    "phi_o": ("phi_o_rad", _set_target("azimuth")),
    "theta_o": ("theta_o_rad", _set_target("elevation")),
    "f": ("f_hz", _set_radio("frequency")),
    "P_AP": ("p_ap_w", _set_radio("tx_power")),
    "T": ("temperature_k", _set_env("temperature")),
    "RH": ("rh_pct", _set_env("relative_humidity")),
    "P": ("pressure_pa", _set_env("pressure")),
}

OUTPUT_COLUMNS = ("pathloss_db", "spreading_db", "absorption_db",
                  "misalignment_db", "kappa_per_m")
ORACLE_COLUMNS = ("oracle_taylor_db", "oracle_exact_db")


@dataclass(frozen=True)
class Axis:
    """One sweep axis: parameter name and a linear or log grid."""

    name: str
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.name not in PARAMETERS:
            raise ConfigError(
                f"unknown sweep parameter {self.name!r}; "
                f"known: {', '.join(sorted(PARAMETERS))}"
            )
        if self.count < 1:
            raise ConfigError(f"axis count must be >= 1, got {self.count}")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"axis scale must be linear or log, got {self.scale!r}")
        if self.scale == "log" and (self.start <= 0 or self.stop <= 0):
            raise ConfigError("log axis endpoints must be > 0")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    @property
    def column(self) -> str:
        return PARAMETERS[self.name][0]


@dataclass(frozen=True)
class SweepSpec:
    """Axes (1 or 2), base scenario, and requested output columns."""

    axes: tuple
    base: Scenario
    outputs: tuple = OUTPUT_COLUMNS
    include_oracle: bool = False

    def __post_init__(self):
        if not (1 <= len(self.axes) <= 2):
            raise ConfigError(f"sweeps support 1 or 2 axes, got {len(self.axes)}")
        for out in self.outputs:
            if out not in OUTPUT_COLUMNS:
                raise ConfigError(f"unknown output column {out!r}")

    def provenance(self) -> dict:
        doc = {
            "axes": [asdict(a) for a in self.axes],
            "outputs": list(self.outputs),
            "include_oracle": self.include_oracle,
            "base": asdict(self.base),
        }
        digest = hashlib.sha256(
            json.dumps(doc, sort_keys=True).encode()
        ).hexdigest()[:16]
        return {"model_version": __version__, "config_hash": digest}


@dataclass(frozen=True)
class SweepTable:
    """Rectangular sweep result: headers, row-major records, provenance."""

    columns: tuple
    rows: tuple
    provenance: dict
    axes: tuple = ()

    def column_values(self, name: str) -> np.ndarray:
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_format_cell(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        records = []
        for row in self.rows:
            rec = {}
            for col, val in zip(self.columns, row):
                if isinstance(val, float) and not math.isfinite(val):
                    rec[col] = None
                else:
                    rec[col] = val
            records.append(rec)
        return json.dumps({"provenance": self.provenance, "records": records},
                          indent=2)


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def _eval_cell(task) -> tuple:
    spec, axis_values = task
    scn = spec.base
    for axis, value in zip(spec.axes, axis_values):
        scn = PARAMETERS[axis.name][1](scn, float(value))
    row = [float(v) for v in axis_values]
    singular = False
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            steer = steering_coefficients(scn.link, scn.target)
            bd = pathloss(scn.geom, scn.link, scn.radio, scn.env, steer,
                          include_absorption=scn.include_absorption)
            values = {
                "pathloss_db": bd.total_db,
                "spreading_db": bd.spreading_db,
                "absorption_db": bd.absorption_db,
                "misalignment_db": bd.misalignment_db,
                "kappa_per_m": absorption_coefficient_env(scn.radio.frequency, scn.env),
            }
    except SingularGeometryError:
        singular = True
        values = {col: math.nan for col in OUTPUT_COLUMNS}
    row.extend(values[col] for col in spec.outputs)
    if spec.include_oracle:
        if singular:
            row.extend([math.nan, math.nan])
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                phases = optimal_phase_profile(scn.geom, scn.link, scn.target,
                                               scn.radio.wavelength)
                row.append(total_field(scn.geom, scn.link, scn.radio, scn.env,
                                       phases, MODE_TAYLOR).pathloss_db)
                row.append(total_field(scn.geom, scn.link, scn.radio, scn.env,
                                       phases, MODE_EXACT).pathloss_db)
    row.append(singular)
    return tuple(row)


def run_sweep(spec: SweepSpec, parallel: bool = False,
              max_workers: int | None = None) -> SweepTable:
    """Evaluate the grid; identical output whether serial or parallel."""
    grids = [axis.values() for axis in spec.axes]
    if len(grids) == 1:
        points = [(v,) for v in grids[0]]
    else:
        points = [(a, b) for a in grids[0] for b in grids[1]]
    tasks = [(spec, p) for p in points]
    if parallel:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            rows = tuple(pool.map(_eval_cell, tasks, chunksize=64))
    else:
        rows = tuple(_eval_cell(t) for t in tasks)
    columns = tuple(axis.column for axis in spec.axes) + tuple(spec.outputs)
    if spec.include_oracle:
        columns += ORACLE_COLUMNS
    columns += ("singular",)
    return SweepTable(columns, rows, spec.provenance(), spec.axes)


def find_axis_extremum(table: SweepTable, column: str, mode: str = "min"):
    """Grid extremum of a column; ties break toward the lowest row index."""
    if column not in table.columns:
        raise ConfigError(f"no such column {column!r}")
    if not table.rows:
        raise RisThzError("empty sweep table")
    vals = table.column_values(column)
    finite = np.isfinite(vals)
    if not np.any(finite):
        raise RisThzError(f"column {column!r} has no finite values")
    masked = np.where(finite, vals, math.inf if mode == "min" else -math.inf)
    idx = int(np.argmin(masked)) if mode == "min" else int(np.argmax(masked))
    n_axes = len(table.axes)
    return tuple(table.rows[idx][:n_axes]), float(vals[idx])


def half_power_width(table: SweepTable, column: str) -> float:
    """Width of the contiguous 3 dB region around the global minimum of a
    1-D angular sweep, with linear interpolation at the crossings."""
    if len(table.axes) != 1:
        raise ConfigError("half-power width requires a 1-D sweep")
    x = table.column_values(table.axes[0].column)
    y = table.column_values(column)
    i0 = int(np.nanargmin(y))
    thr = y[i0] + 3.0
    if np.all(y <= thr):
        warnings.warn("column is flat within 3 dB; returning full axis span",
                      stacklevel=2)
        return float(x[-1] - x[0])

    left = x[0]
    partial_left = True
    for j in range(i0, 0, -1):
        if y[j - 1] > thr:
            frac = (thr - y[j]) / (y[j - 1] - y[j])
            left = x[j] + frac * (x[j - 1] - x[j])
            partial_left = False
            break
    right = x[-1]
    partial_right = True
    for j in range(i0, len(y) - 1):
        if y[j + 1] > thr:
            frac = (thr - y[j]) / (y[j + 1] - y[j])
            right = x[j] + frac * (x[j + 1] - x[j])
            partial_right = False
            break
    if partial_left or partial_right:
        warnings.warn("3 dB region touches the grid edge; width is partial",
                      stacklevel=2)
    return float(right - left)
