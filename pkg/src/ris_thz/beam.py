"""Beam steering: per-element phase synthesis and the separable array factor.

The array factor splits into two uniform-line-array sums gamma1 (x axis) and
gamma2 (y axis), each a Dirichlet kernel ratio sin(Nx)/sin(x); the steering
coefficients zeta1, zeta2 translate a target direction into the linear phase
profile that aligns all element contributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .geometry import LinkGeometry, RisGeometry, _check_index

TWO_PI = 2.0 * math.pi

# Below this |sin(x)|, the Dirichlet ratio switches to its Taylor limit.
_SINGULARITY_EPS = 1e-9


@dataclass(frozen=True)
class SteeringTarget:
    """Desired reflection direction: elevation in [0, pi/2), azimuth in [0, 2pi)."""

    elevation: float
    azimuth: float

    def __post_init__(self):
        if not (0 <= self.elevation < math.pi / 2):
            raise DomainError(f"target elevation must be in [0, pi/2), got {self.elevation}")


@dataclass(frozen=True)
class SteeringCoefficients:
    """Linear phase-slope coefficients along x (zeta1) and y (zeta2)."""

    zeta1: float
    zeta2: float


@dataclass(frozen=True)
class PhaseProfile:
    """Per-element phase shifts [rad] in [0, 2pi), shape (M, N), row m major."""

    phases: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.phases, dtype=float)
        if arr.ndim != 2:
            raise ShapeError(f"phase matrix must be 2-D, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ShapeError("phase matrix contains non-finite entries")
        object.__setattr__(self, "phases", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.phases.shape


def steering_coefficients(link: LinkGeometry, target: SteeringTarget) -> SteeringCoefficients:
    """Coefficients that steer the reflected beam at the target direction."""
    st_i, st_o = math.sin(link.ap_elevation), math.sin(target.elevation)
    z1 = -(st_i * math.cos(link.ap_azimuth) + st_o * math.cos(target.azimuth))
    z2 = -(st_i * math.sin(link.ap_azimuth) + st_o * math.sin(target.azimuth))
    return SteeringCoefficients(z1, z2)


def optimal_phase(m: int, n: int, geom: RisGeometry, link: LinkGeometry,
                  target: SteeringTarget, wavelength: float) -> float:
    """Optimal phase shift [rad] of element (m, n), reduced into [0, 2pi)."""
    _check_index(m, n, geom)
    z = steering_coefficients(link, target)
    raw = (TWO_PI / wavelength) * (z.zeta1 * (n - 0.5) * geom.pitch_x
                                   + z.zeta2 * (m - 0.5) * geom.pitch_y)
    return raw % TWO_PI


def optimal_phase_profile(geom: RisGeometry, link: LinkGeometry,
                          target: SteeringTarget, wavelength: float) -> PhaseProfile:
    """Full M x N optimal phase matrix, vectorized over the lattice."""
    z = steering_coefficients(link, target)
    xs = (geom.n_indices - 0.5) * geom.pitch_x
    ys = (geom.m_indices - 0.5) * geom.pitch_y
    raw = (TWO_PI / wavelength) * (z.zeta1 * xs[np.newaxis, :]
                                   + z.zeta2 * ys[:, np.newaxis])
    return PhaseProfile(np.mod(raw, TWO_PI))


def linear_phase_profile(geom: RisGeometry, steering: SteeringCoefficients,
                         wavelength: float) -> PhaseProfile:
    """Phase matrix with the given slope coefficients (not necessarily optimal)."""
    xs = (geom.n_indices - 0.5) * geom.pitch_x
    ys = (geom.m_indices - 0.5) * geom.pitch_y
    raw = (TWO_PI / wavelength) * (steering.zeta1 * xs[np.newaxis, :]
                                   + steering.zeta2 * ys[:, np.newaxis])
    return PhaseProfile(np.mod(raw, TWO_PI))


def dirichlet_ratio(count: int, x: float) -> float:
    """sin(count*x)/sin(x) with the removable singularities filled by limit.

    At x = k*pi the value is count*(-1)^(k*(count-1)); near the singularity a
    second-order Taylor term keeps the function smooth.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    s = math.sin(x)
    if abs(s) < _SINGULARITY_EPS:
        k = round(x / math.pi)
        eps = x - k * math.pi
        sign = -1.0 if (k * (count - 1)) % 2 else 1.0
        return sign * count * (1.0 - (count**2 - 1) * eps**2 / 6.0)
    return math.sin(count * x) / s


def array_factor(geom: RisGeometry, link: LinkGeometry,
                 steering: SteeringCoefficients, wavelength: float) -> tuple[float, float]:
    """Separable array factors (gamma1, gamma2); |gamma1*gamma2| <= M*N."""
    st_i, st_r = math.sin(link.ap_elevation), math.sin(link.ue_elevation)
    arg_x = (math.pi / wavelength) * (st_i * math.cos(link.ap_azimuth)
                                      + st_r * math.cos(link.ue_azimuth)
                                      + steering.zeta1) * geom.pitch_x
    arg_y = (math.pi / wavelength) * (st_i * math.sin(link.ap_azimuth)
                                      + st_r * math.sin(link.ue_azimuth)
                                      + steering.zeta2) * geom.pitch_y
    g1 = dirichlet_ratio(geom.num_cols, arg_x)
    g2 = dirichlet_ratio(geom.num_rows, arg_y)
    return g1, g2


def array_factor_raw(geom: RisGeometry, link: LinkGeometry,
                     phases: PhaseProfile, wavelength: float) -> complex:
    """Direct complex double sum of the per-element phasors.

    Sums exp(j*(2pi/lambda)*(d1 + d2 - beta) + j*phi_mn) over the lattice,
    with beta the first-order two-hop distance of each element.
    """
    if phases.shape != (geom.num_rows, geom.num_cols):
        raise ShapeError(
            f"phase matrix shape {phases.shape} does not match lattice "
            f"({geom.num_rows}, {geom.num_cols})"
        )
    xs = (geom.n_indices - 0.5) * geom.pitch_x
    ys = (geom.m_indices - 0.5) * geom.pitch_y
    X, Y = np.meshgrid(xs, ys)
    st_i, st_r = math.sin(link.ap_elevation), math.sin(link.ue_elevation)
    path_advance = ((st_i * math.cos(link.ap_azimuth) + st_r * math.cos(link.ue_azimuth)) * X
                    + (st_i * math.sin(link.ap_azimuth) + st_r * math.sin(link.ue_azimuth)) * Y)
    total_phase = (TWO_PI / wavelength) * path_advance + phases.phases
    return complex(np.sum(np.exp(1j * total_phase)))
