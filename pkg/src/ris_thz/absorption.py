"""Molecular absorption model for the 100-500 GHz band.

Implements a six-line simplified water-vapor absorption coefficient plus a
frequency-dependent continuum, driven by temperature, pressure, and relative
humidity through the volume mixing ratio of water vapor.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SPEED_OF_LIGHT = 299_792_458.0  # m/s

# 10*log10(e): converts a per-meter attenuation rate into dB per meter.
DB_PER_NEPER = 10.0 / math.log(10.0)

BAND_MIN_HZ = 100e9
BAND_MAX_HZ = 500e9

# Soft validity range of the Buck saturation-pressure fit, kelvin.
TEMP_SOFT_MIN = 260.0
TEMP_SOFT_MAX = 340.0


@dataclass(frozen=True)
class Environment:
    """Atmospheric state: temperature [K], pressure [Pa], relative humidity [%]."""

    temperature: float = 296.0
    pressure: float = 101325.0
    relative_humidity: float = 50.0

    def __post_init__(self):
        if not (math.isfinite(self.temperature) and self.temperature > 0):
            raise DomainError(f"temperature must be finite and > 0, got {self.temperature}")
        if not (math.isfinite(self.pressure) and self.pressure > 0):
            raise DomainError(f"pressure must be finite and > 0, got {self.pressure}")
        if not (math.isfinite(self.relative_humidity) and 0 <= self.relative_humidity <= 100):
            raise DomainError(
                f"relative_humidity must be in [0, 100], got {self.relative_humidity}"
            )


@dataclass(frozen=True)
class AbsorptionCoefficients:
    """Fixed coefficient tables of the six-line absorption model.

    ``line_numerator_params`` holds the (x1, x2, x3) triples of each line's
    numerator polynomial; ``line_denominator_params`` the (y1, y2) pairs of
    each line's squared denominator offset; ``line_centers`` the dimensionless
    centers in units of f/(100c); ``continuum_params`` the four continuum
    constants; ``buck_params`` the saturation-pressure fit constants.
    """

    line_numerator_params: tuple = (
        (5.159e-5, -6.65e-5, 0.0159),   # special form: a1*(1-mu)*(a2*(1-mu)+a3)
        (0.1925, 0.135, 0.0318),
        (0.2251, 0.1314, 0.0297),
        (2.053, 0.1717, 0.0306),
        (0.177, 0.0832, 0.0213),
        (2.146, 0.1206, 0.0277),
    )
    line_denominator_params: tuple = (
        (-2.09e-4, 0.05),               # special form: (b1*(1-mu)+b2)^2
        (0.4241, 0.0998),
        (0.4127, 0.0932),
        (0.5394, 0.0961),
        (0.2615, 0.0668),
        (0.3789, 0.0871),
    )
    line_centers: tuple = (3.96, 6.11, 10.84, 12.68, 14.65, 14.94)
    continuum_params: tuple = (0.0157, 2e-4, 0.915e-112, 9.42)
    buck_params: tuple = (6.1121, 1.0007, 3.46e-8, 17.502, 240.97, 273.15)


COEFFS = AbsorptionCoefficients()


def saturated_vapor_pressure(env: Environment) -> float:
    """Saturated water-vapor partial pressure [hPa] from a Buck-equation fit."""
    p1, p2, p3, p4, p5, p6 = COEFFS.buck_params
    T, P = env.temperature, env.pressure
    if not (TEMP_SOFT_MIN <= T <= TEMP_SOFT_MAX):
        warnings.warn(
            f"temperature {T} K outside the fit's soft validity range "
            f"[{TEMP_SOFT_MIN}, {TEMP_SOFT_MAX}] K",
            stacklevel=2,
        )
    return p1 * (p2 + p3 * P) * math.exp(p4 * (T - p6) / (T + p5 - p6))


def mixing_ratio(env: Environment) -> float:
    """Volume mixing ratio of water vapor (dimensionless).

    Scales the saturated partial pressure by the relative humidity and
    normalizes by the total pressure; the hPa -> Pa conversion of the
    saturation pressure happens here.
    """
    p_w_pa = 100.0 * saturated_vapor_pressure(env)
    return (env.relative_humidity / 100.0) * p_w_pa / env.pressure


def _line_terms(mu: float) -> tuple[np.ndarray, np.ndarray]:
    """Numerators A_i(mu) and denominator offsets B_i(mu) for the six lines."""
    num = COEFFS.line_numerator_params
    den = COEFFS.line_denominator_params
    a1, a2, a3 = num[0]
    b1, b2 = den[0]
    A = np.empty(6)
    B = np.empty(6)
    A[0] = a1 * (1 - mu) * (a2 * (1 - mu) + a3)
    B[0] = (b1 * (1 - mu) + b2) ** 2
    for i in range(1, 6):
        x1, x2, x3 = num[i]
        y1, y2 = den[i]
        A[i] = x1 * mu * (x2 * mu + x3)
        B[i] = (y1 * mu + y2) ** 2
    return A, B


def continuum(mu: float, f: float) -> float:
    """Continuum contribution C(mu, f) [1/m]; strictly increasing in f for mu > 0."""
    r1, r2, r3, r4 = COEFFS.continuum_params
    return mu / r1 * (r2 + r3 * f**r4)


def absorption_coefficient(f: float, mu: float) -> float:
    """Molecular absorption coefficient kappa(f) [1/m] at mixing ratio mu.

    f is in Hz; the line detuning is measured in units of f/(100c).
    """
    if mu < 0:
        raise DomainError(f"mixing ratio must be >= 0, got {mu}")
    if not math.isfinite(f) or f <= 0:
        raise DomainError(f"frequency must be finite and > 0, got {f}")
    if not (BAND_MIN_HZ <= f <= BAND_MAX_HZ):
        warnings.warn(
            f"frequency {f / 1e9:.1f} GHz outside the model's 100-500 GHz band",
            stacklevel=2,
        )
    A, B = _line_terms(mu)
    x = f / (100.0 * SPEED_OF_LIGHT)
    q = np.asarray(COEFFS.line_centers)
    kappa = float(np.sum(A / (B + (x - q) ** 2))) + continuum(mu, f)
    return kappa


def absorption_coefficient_env(f: float, env: Environment) -> float:
    """kappa(f) [1/m] straight from environmental conditions."""
    return absorption_coefficient(f, mixing_ratio(env))


def absorption_loss_db(f: float, env: Environment, path_length: float) -> float:
    """Molecular absorption loss [dB] over a path of the given length [m]."""
    if path_length < 0:
        raise DomainError(f"path_length must be >= 0, got {path_length}")
    if path_length == 0:
        return 0.0
    return DB_PER_NEPER * absorption_coefficient_env(f, env) * path_length
