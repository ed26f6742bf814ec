"""RIS lattice geometry, terminal positions, and per-element distances.

The surface lies in the z=0 plane of a Cartesian frame centered at the RIS
center; elevation angles are measured from the surface normal (+z).
Element indices run n in [1-N/2, N/2] and m in [1-M/2, M/2], which requires
even element counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IndexRangeError


@dataclass(frozen=True)
class RisGeometry:
    """Element counts (even) and element pitches [m] of the RIS lattice."""

    num_rows: int   # M, along y
    num_cols: int   # N, along x
    pitch_x: float
    pitch_y: float

    def __post_init__(self):
        M, N = self.num_rows, self.num_cols
        if M < 2 or M % 2 != 0 or N < 2 or N % 2 != 0:
            raise DomainError(
                f"element counts must be even and >= 2 (the half-integer index "
                f"ranges presume even counts), got M={M}, N={N}"
            )
        if not (self.pitch_x > 0 and self.pitch_y > 0):
            raise DomainError(f"pitches must be > 0, got {self.pitch_x}, {self.pitch_y}")

    @property
    def m_indices(self) -> np.ndarray:
        M = self.num_rows
        return np.arange(1 - M // 2, M // 2 + 1)

    @property
    def n_indices(self) -> np.ndarray:
        N = self.num_cols
        return np.arange(1 - N // 2, N // 2 + 1)

    @property
    def num_elements(self) -> int:
        return self.num_rows * self.num_cols


@dataclass(frozen=True)
class LinkGeometry:
    """AP and UE distances [m] and direction angles [rad] seen from the RIS center."""

    ap_distance: float
    ue_distance: float
    ap_elevation: float
    ap_azimuth: float
    ue_elevation: float
    ue_azimuth: float

    def __post_init__(self):
        if not (self.ap_distance > 0 and self.ue_distance > 0):
            raise DomainError(
                f"distances must be > 0, got d1={self.ap_distance}, d2={self.ue_distance}"
            )
        # pi/2 itself is allowed so grazing incidence can be reported as a
        # singular configuration downstream instead of failing at construction.
        for name, ang in (("ap_elevation", self.ap_elevation),
                          ("ue_elevation", self.ue_elevation)):
            if not (0 <= ang <= math.pi / 2):
                raise DomainError(f"{name} must lie in [0, pi/2], got {ang}")


@dataclass(frozen=True)
class Point3:
    """A point in the RIS-centered Cartesian frame [m]."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise DomainError(f"point components must be finite, got {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)


def _check_index(m: int, n: int, geom: RisGeometry) -> None:
    M, N = geom.num_rows, geom.num_cols
    if not (1 - M // 2 <= m <= M // 2):
        raise IndexRangeError(f"m={m} outside [{1 - M // 2}, {M // 2}]")
    if not (1 - N // 2 <= n <= N // 2):
        raise IndexRangeError(f"n={n} outside [{1 - N // 2}, {N // 2}]")


def element_position(m: int, n: int, geom: RisGeometry) -> Point3:
    """Center of element (m, n): ((n-1/2)dx, (m-1/2)dy, 0)."""
    _check_index(m, n, geom)
    return Point3((n - 0.5) * geom.pitch_x, (m - 0.5) * geom.pitch_y, 0.0)


def _direction(elevation: float, azimuth: float) -> np.ndarray:
    s, c = math.sin(elevation), math.cos(elevation)
    return np.array([s * math.cos(azimuth), s * math.sin(azimuth), c])


def ap_position(link: LinkGeometry) -> Point3:
    """AP location: spherical-to-Cartesian with (d1, theta_i, phi_i)."""
    v = link.ap_distance * _direction(link.ap_elevation, link.ap_azimuth)
    return Point3(*v)


def ue_position(link: LinkGeometry) -> Point3:
    """UE location: spherical-to-Cartesian with (d2, theta_r, phi_r)."""
    v = link.ue_distance * _direction(link.ue_elevation, link.ue_azimuth)
    return Point3(*v)


def element_distances_exact(m: int, n: int, geom: RisGeometry,
                            link: LinkGeometry) -> tuple[float, float]:
    """Exact Euclidean distances (element->AP, element->UE) [m]."""
    p = element_position(m, n, geom).as_array()
    l_t = float(np.linalg.norm(ap_position(link).as_array() - p))
    l_r = float(np.linalg.norm(ue_position(link).as_array() - p))
    return l_t, l_r


def element_distances_taylor(m: int, n: int, geom: RisGeometry,
                             link: LinkGeometry) -> tuple[float, float]:
    """First-order far-field distances (element->AP, element->UE) [m].

    l_t ~ d1 - sin(theta_i)cos(phi_i)(n-1/2)dx - sin(theta_i)sin(phi_i)(m-1/2)dy,
    and the analogous l_r with (d2, theta_r, phi_r).
    """
    _check_index(m, n, geom)
    xs = (n - 0.5) * geom.pitch_x
    ys = (m - 0.5) * geom.pitch_y
    st_i = math.sin(link.ap_elevation)
    l_t = (link.ap_distance
           - st_i * math.cos(link.ap_azimuth) * xs
           - st_i * math.sin(link.ap_azimuth) * ys)
    st_r = math.sin(link.ue_elevation)
    l_r = (link.ue_distance
           - st_r * math.cos(link.ue_azimuth) * xs
           - st_r * math.sin(link.ue_azimuth) * ys)
    return l_t, l_r


def distance_grids_taylor(geom: RisGeometry,
                          link: LinkGeometry) -> tuple[np.ndarray, np.ndarray]:
    """Taylor distances for the whole lattice, shape (M, N), row m major."""
    xs = (geom.n_indices - 0.5) * geom.pitch_x
    ys = (geom.m_indices - 0.5) * geom.pitch_y
    X, Y = np.meshgrid(xs, ys)
    st_i = math.sin(link.ap_elevation)
    st_r = math.sin(link.ue_elevation)
    l_t = (link.ap_distance
           - st_i * math.cos(link.ap_azimuth) * X
           - st_i * math.sin(link.ap_azimuth) * Y)
    l_r = (link.ue_distance
           - st_r * math.cos(link.ue_azimuth) * X
           - st_r * math.sin(link.ue_azimuth) * Y)
    return l_t, l_r


def distance_grids_exact(geom: RisGeometry,
                         link: LinkGeometry) -> tuple[np.ndarray, np.ndarray]:
    """Exact distances for the whole lattice, shape (M, N), row m major."""
    xs = (geom.n_indices - 0.5) * geom.pitch_x
    ys = (geom.m_indices - 0.5) * geom.pitch_y
    X, Y = np.meshgrid(xs, ys)
    ap = ap_position(link).as_array()
    ue = ue_position(link).as_array()
    l_t = np.sqrt((ap[0] - X) ** 2 + (ap[1] - Y) ** 2 + ap[2] ** 2)
    l_r = np.sqrt((ue[0] - X) ** 2 + (ue[1] - Y) ** 2 + ue[2] ** 2)
    return l_t, l_r


def fraunhofer_distance(geom: RisGeometry, wavelength: float) -> float:
    """Far-field bound 2 D^2 / lambda with D the RIS diagonal [m]."""
    if wavelength <= 0:
        raise DomainError(f"wavelength must be > 0, got {wavelength}")
    dx_total = geom.num_cols * geom.pitch_x
    dy_total = geom.num_rows * geom.pitch_y
    return 2.0 * (dx_total**2 + dy_total**2) / wavelength
