#!/usr/bin/env python3
"""Molecular absorption coefficient over 100-500 GHz.

Writes kappa(f) and the equivalent dB/km loss at the reference conditions
(296 K, 101325 Pa, 50% RH) on a 0.5 GHz grid. The two dominant water-vapor
peaks sit near 380 and 448 GHz with transmission windows between them.
"""

import argparse
import pathlib

import numpy as np

from ris_thz import DB_PER_NEPER, Environment, absorption_coefficient_env


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results", help="output directory")
    parser.add_argument("--rh", type=float, default=50.0)
    parser.add_argument("--temperature", type=float, default=296.0)
    args = parser.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    env = Environment(temperature=args.temperature,
                      relative_humidity=args.rh)
    freqs = np.arange(100e9, 500e9 + 1, 0.5e9)
    lines = ["f_hz,kappa_per_m,loss_db_per_km"]
    for f in freqs:
        kappa = absorption_coefficient_env(float(f), env)
        lines.append(f"{f:.9g},{kappa:.9g},{DB_PER_NEPER * kappa * 1000:.9g}")
    path = out / "absorption_spectrum.csv"
    path.write_text("\n".join(lines) + "\n")

    ks = np.array([absorption_coefficient_env(float(f), env) for f in freqs])
    peak = freqs[np.argmax(ks)] / 1e9
    print(f"{len(freqs)} points, strongest line at {peak:.1f} GHz "
          f"({ks.max():.4g} 1/m) -> {path}")


if __name__ == "__main__":
    main()
