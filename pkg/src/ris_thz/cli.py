"""Command-line front-end.

Subcommands: pathloss, sweep, phases, validate, absorption. Degrees, GHz,
and dBi are accepted here and converted once; every emitted file carries SI
units in its headers.

Exit codes: 0 success, 2 usage/config error, 3 singular geometry,
4 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import __version__
from .absorption import (DB_PER_NEPER, absorption_coefficient_env, mixing_ratio)
from .beam import PhaseProfile, optimal_phase_profile, steering_coefficients
from .config import RunConfig, Scenario, load_config
from .errors import ConfigError, ShapeError, SingularGeometryError
from .geometry import fraunhofer_distance
from .linkbudget import pathloss, received_power
from .oracle import validation_report
from .sweep import Axis, SweepSpec, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SINGULAR = 3
EXIT_VALIDATION = 4

_AXIS_RE = re.compile(r"^(\d+)(deg|ghz)?(log)?$")


def _parse_axis(text: str) -> Axis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(
            f"axis must be name:start:stop:count[deg|ghz][log], got {text!r}"
        )
    name, start_s, stop_s, count_s = parts
    m = _AXIS_RE.match(count_s)
    if not m:
        raise ConfigError(f"bad axis count/unit {count_s!r} in {text!r}")
    count = int(m.group(1))
    unit = m.group(2)
    scale = "log" if m.group(3) else "linear"
    try:
        start, stop = float(start_s), float(stop_s)
    except ValueError as exc:
        raise ConfigError(f"bad axis endpoints in {text!r}") from exc
    if unit == "deg":
        start, stop = math.radians(start), math.radians(stop)
    elif unit == "ghz":
        start, stop = start * 1e9, stop * 1e9
    return Axis(name, start, stop, count, scale)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scenario(args) -> tuple[RunConfig, Scenario]:
    cfg = load_config(args.config, args.set or [])
    return cfg, cfg.to_scenario(include_absorption=not args.no_absorption)


def cmd_pathloss(args) -> int:
    cfg, scn = _scenario(args)
    steer = steering_coefficients(scn.link, scn.target)
    try:
        bd = pathloss(scn.geom, scn.link, scn.radio, scn.env, steer,
                      include_absorption=scn.include_absorption)
    except SingularGeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    lam = scn.radio.wavelength
    ff = fraunhofer_distance(scn.geom, lam)
    report = {
        "spreading_db": bd.spreading_db,
        "absorption_db": bd.absorption_db,
        "misalignment_db": bd.misalignment_db,
        "total_db": bd.total_db,
        "received_power_w": received_power(scn.radio.tx_power, bd),
        "kappa_per_m": absorption_coefficient_env(scn.radio.frequency, scn.env),
        "mixing_ratio": mixing_ratio(scn.env),
        "fraunhofer_distance_m": ff,
        "far_field": min(scn.link.ap_distance, scn.link.ue_distance) >= ff,
        "config_hash": cfg.config_hash(),
    }
    if args.json:
        _emit(json.dumps(report, indent=2) + "\n", args.output)
    else:
        lines = [
            f"spreading loss     {bd.spreading_db:10.3f} dB",
            f"absorption loss    {bd.absorption_db:10.3f} dB",
            f"misalignment loss  {bd.misalignment_db:10.3f} dB",
            f"total pathloss     {bd.total_db:10.3f} dB",
            f"received power     {report['received_power_w']:.6g} W",
            f"kappa              {report['kappa_per_m']:.6g} 1/m",
            f"mixing ratio       {report['mixing_ratio']:.6g}",
            f"Fraunhofer bound   {ff:.4g} m"
            + ("" if report["far_field"] else "  (advisory: link is in the near field)"),
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg, scn = _scenario(args)
    if not args.axis:
        raise ConfigError("at least one --axis is required")
    axes = tuple(_parse_axis(a) for a in args.axis)
    spec = SweepSpec(axes=axes, base=scn, include_oracle=args.oracle)
    table = run_sweep(spec, parallel=args.parallel)
    text = table.to_json() + "\n" if args.json else table.to_csv()
    _emit(text, args.output)
    return EXIT_OK


def cmd_phases(args) -> int:
    cfg, scn = _scenario(args)
    profile = optimal_phase_profile(scn.geom, scn.link, scn.target,
                                    scn.radio.wavelength)
    M, N = profile.shape
    lines = [
        f"# element phase shifts [rad] in [0, 2pi); {M} rows x {N} cols",
        f"# row i holds lattice index m = i+1-{M // 2} (y axis); "
        f"column j holds n = j+1-{N // 2} (x axis)",
    ]
    for row in profile.phases:
        lines.append(",".join(f"{v:.9g}" for v in row))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def load_phase_csv(path: str) -> PhaseProfile:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if not rows or len({len(r) for r in rows}) != 1:
        raise ShapeError(f"phase file {path} is empty or ragged")
    return PhaseProfile(np.array(rows))


def cmd_validate(args) -> int:
    cfg, scn = _scenario(args)
    if args.phases_file:
        profile = load_phase_csv(args.phases_file)
        if profile.shape != (scn.geom.num_rows, scn.geom.num_cols):
            raise ConfigError(
                f"phase file shape {profile.shape} does not match lattice "
                f"({scn.geom.num_rows}, {scn.geom.num_cols})"
            )
    else:
        profile = optimal_phase_profile(scn.geom, scn.link, scn.target,
                                        scn.radio.wavelength)
    steer = steering_coefficients(scn.link, scn.target)
    try:
        report = validation_report(scn.geom, scn.link, scn.radio, scn.env,
                                   profile, steer.zeta1, steer.zeta2,
                                   far_field_tol_db=args.far_field_tol)
    except SingularGeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    _emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def cmd_absorption(args) -> int:
    cfg, scn = _scenario(args)
    if args.points < 1:
        raise ConfigError("--points must be >= 1")
    if args.points == 1:
        freqs = [args.f_start_ghz * 1e9]
    else:
        freqs = np.linspace(args.f_start_ghz * 1e9, args.f_stop_ghz * 1e9,
                            args.points)
    lines = ["f_hz,kappa_per_m,loss_db_per_km"]
    for f in freqs:
        kappa = absorption_coefficient_env(float(f), scn.env)
        lines.append(f"{f:.9g},{kappa:.9g},{DB_PER_NEPER * kappa * 1000.0:.9g}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-thz",
        description="RIS-assisted terahertz link pathloss model",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML scenario file")
    common.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE",
                        help="override a config value (repeatable)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--output", help="write to file instead of stdout")
    common.add_argument("--seed", type=int, default=None,
                        help="reserved; the model is deterministic")
    common.add_argument("--no-absorption", action="store_true",
                        help="exclude the molecular absorption term")
    common.add_argument("--dump-config", action="store_true",
                        help="print the resolved configuration and exit")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pathloss", parents=[common],
                       help="single closed-form evaluation with breakdown")
    p.set_defaults(func=cmd_pathloss)

    p = sub.add_parser("sweep", parents=[common], help="grid sweep to CSV/JSON")
    p.add_argument("--axis", action="append",
                   metavar="NAME:START:STOP:COUNT[deg|ghz][log]",
                   help="sweep axis (max 2, repeatable)")
    p.add_argument("--oracle", action="store_true",
                   help="add brute-force oracle columns")
    p.add_argument("--parallel", action="store_true",
                   help="evaluate cells in a process pool")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("phases", parents=[common],
                       help="export the optimal phase matrix as CSV")
    p.set_defaults(func=cmd_phases)

    p = sub.add_parser("validate", parents=[common],
                       help="closed form vs brute-force field oracles")
    p.add_argument("--phases-file", help="CSV phase matrix to use instead of "
                                         "the optimal profile")
    p.add_argument("--far-field-tol", type=float, default=0.1,
                   help="allowed closed-vs-exact gap in dB (default 0.1)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("absorption", parents=[common],
                       help="absorption coefficient curve over frequency")
    p.add_argument("--f-start-ghz", type=float, default=100.0)
    p.add_argument("--f-stop-ghz", type=float, default=500.0)
    p.add_argument("--points", type=int, default=401)
    p.set_defaults(func=cmd_absorption)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "dump_config", False):
            cfg = load_config(args.config, args.set or [])
            _emit(cfg.dump_toml(), args.output)
            return EXIT_OK
        return args.func(args)
    except (ConfigError, ShapeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SingularGeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
