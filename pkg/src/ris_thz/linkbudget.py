"""Closed-form end-to-end pathloss of the RIS-reflected terahertz link.

Assembles spreading loss, molecular absorption, and the array-misalignment
penalty into a dB breakdown. All gains are linear inside this module;
dBi <-> linear conversion is a CLI-boundary concern.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from scipy.integrate import quad

from .absorption import (DB_PER_NEPER, SPEED_OF_LIGHT, Environment,
                         absorption_coefficient_env)
from .beam import SteeringCoefficients, SteeringTarget, array_factor, steering_coefficients
from .errors import DomainError, RisThzError, SingularGeometryError
from .geometry import LinkGeometry, RisGeometry, fraunhofer_distance


@dataclass(frozen=True)
class RadiationPattern:
    """cos^q elevation power pattern on the upper hemisphere, zero below."""

    exponent: float = 1.0

    def __post_init__(self):
        if self.exponent < 0:
            raise DomainError(f"pattern exponent must be >= 0, got {self.exponent}")


@dataclass(frozen=True)
class RadioConfig:
    """Frequency [Hz], linear terminal gains, element reflection magnitude,
    element pattern, and transmit power [W]."""

    frequency: float
    ap_gain: float
    ue_gain: float
    reflection_magnitude: float = 0.9
    ru_pattern: RadiationPattern = field(default_factory=RadiationPattern)
    tx_power: float = 1.0

    def __post_init__(self):
        if self.frequency <= 0:
            raise DomainError(f"frequency must be > 0, got {self.frequency}")
        if self.ap_gain <= 0 or self.ue_gain <= 0:
            raise DomainError("antenna gains must be > 0")
        if not (0 < self.reflection_magnitude <= 1):
            raise DomainError(
                f"reflection magnitude must be in (0, 1], got {self.reflection_magnitude}"
            )
        if self.tx_power <= 0:
            raise DomainError(f"tx power must be > 0, got {self.tx_power}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency


@dataclass(frozen=True)
class PathlossBreakdown:
    """Pathloss components [dB]; total is their sum."""

    spreading_db: float
    absorption_db: float
    misalignment_db: float

    @property
    def total_db(self) -> float:
        return self.spreading_db + self.absorption_db + self.misalignment_db


def pattern_value(pattern: RadiationPattern, theta: float, phi: float = 0.0) -> float:
    """Normalized power pattern: cos^q(theta) for theta <= pi/2, else 0."""
    # cos(pi/2) is ~6e-17 in floating point; the boundary belongs to the
    # zero region so grazing geometries are detected exactly.
    if theta >= math.pi / 2:
        return 0.0
    c = math.cos(theta)
    if c <= 0.0:
        return 0.0
    return c ** pattern.exponent


def ru_directivity(pattern: RadiationPattern) -> float:
    """Element gain 4*pi / (hemisphere integral of the pattern).

    Computed by adaptive quadrature and cross-checked against the cos^q
    closed form 2*(q+1).
    """
    q = pattern.exponent
    integrand = lambda th: math.cos(th) ** q * math.sin(th)
    integral, err = quad(integrand, 0.0, math.pi / 2)
    solid_angle = 2.0 * math.pi * integral
    if err > 1e-8 * max(integral, 1e-300):
        raise RisThzError(f"pattern quadrature did not converge (err={err})")
    gain = 4.0 * math.pi / solid_angle
    closed = 2.0 * (q + 1.0)
    if not math.isclose(gain, closed, rel_tol=1e-9):
        raise RisThzError(
            f"quadrature gain {gain} disagrees with cos^q closed form {closed}"
        )
    return gain


def _spreading_db(geom: RisGeometry, link: LinkGeometry, radio: RadioConfig,
                  u_in: float, u_out: float) -> float:
    lam = radio.wavelength
    g_total = radio.ap_gain * ru_directivity(radio.ru_pattern) * radio.ue_gain
    numer = 64.0 * math.pi**3 * link.ap_distance**2 * link.ue_distance**2
    denom = (geom.pitch_x * geom.pitch_y * lam**2
             * radio.reflection_magnitude**2 * u_in * u_out * g_total
             * geom.num_rows**2 * geom.num_cols**2)
    return 10.0 * math.log10(numer / denom)


def pathloss(geom: RisGeometry, link: LinkGeometry, radio: RadioConfig,
             env: Environment, steering: SteeringCoefficients,
             include_absorption: bool = True) -> PathlossBreakdown:
    """End-to-end pathloss breakdown of the closed-form model.

    Raises SingularGeometryError when the element pattern vanishes at the
    incidence or departure direction (grazing geometry).
    """
    u_in = pattern_value(radio.ru_pattern, link.ap_elevation, link.ap_azimuth)
    u_out = pattern_value(radio.ru_pattern, link.ue_elevation, link.ue_azimuth)
    if u_in == 0.0 or u_out == 0.0:
        raise SingularGeometryError(
            "element pattern is zero at incidence or departure; loss is infinite"
        )
    lam = radio.wavelength
    ff = fraunhofer_distance(geom, lam)
    if min(link.ap_distance, link.ue_distance) < ff:
        warnings.warn(
            f"link distance below the Fraunhofer bound {ff:.3g} m; the "
            "closed form is a far-field approximation",
            stacklevel=2,
        )

    spreading = _spreading_db(geom, link, radio, u_in, u_out)

    if include_absorption:
        kappa = absorption_coefficient_env(radio.frequency, env)
        absorption = DB_PER_NEPER * kappa * (link.ap_distance + link.ue_distance)
    else:
        absorption = 0.0

    g1, g2 = array_factor(geom, link, steering, lam)
    gamma = abs(g1 * g2)
    mn = geom.num_rows * geom.num_cols
    # Clamp tiny overshoots of |gamma| past MN from the Dirichlet limit path.
    misalignment = max(0.0, 20.0 * math.log10(mn / gamma)) if gamma > 0 else math.inf

    return PathlossBreakdown(spreading, absorption, misalignment)


def pathloss_boresight(geom: RisGeometry, link: LinkGeometry, radio: RadioConfig,
                       env: Environment, target: SteeringTarget,
                       include_absorption: bool = True) -> float:
    """Minimum pathloss [dB]: the UE sits at the steering target and the
    phase profile matches, so the array factor is exactly M*N."""
    aligned = LinkGeometry(
        ap_distance=link.ap_distance,
        ue_distance=link.ue_distance,
        ap_elevation=link.ap_elevation,
        ap_azimuth=link.ap_azimuth,
        ue_elevation=target.elevation,
        ue_azimuth=target.azimuth,
    )
    steering = steering_coefficients(aligned, target)
    return pathloss(geom, aligned, radio, env, steering,
                    include_absorption=include_absorption).total_db


def received_power(tx_power: float, loss: PathlossBreakdown) -> float:
    """Received power [W] from transmit power and the total loss."""
    if tx_power <= 0:
        raise DomainError(f"tx power must be > 0, got {tx_power}")
    return tx_power / 10.0 ** (loss.total_db / 10.0)
