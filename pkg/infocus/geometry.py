"""Transmit array geometry and receiver placement"""

import math
import logging
from dataclasses import dataclass

import numpy as np

from .constants import PhysicalConstants, PlacementClass

# logger
logger = logging.getLogger("infocus.geometry")

# relative slack on the disc membership test
_DISC_TOLERANCE = 1e-9


class DegenerateGeometryError(ValueError):
    """Raised when an array or aperture contains no usable antennas"""
    pass


class PlacementError(ValueError):
    """Raised when an operation is used with the wrong receiver placement"""
    pass


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    """Half-wavelength style lattice of antennas inside a disc of radius R

    Coordinates are metres in the plane z = 0. Antennas switched off by
    thinning stay in `coords` with a False entry in `active`; they still count
    towards `n_tx`, which sets the per-antenna weight magnitude.
    """

    radius: float
    spacing: float
    x: np.ndarray
    y: np.ndarray
    active: np.ndarray

    def __post_init__(self):
        for array in (self.x, self.y, self.active):
            array.setflags(write=False)

    @property
    def n_tx(self):
        """Number of antennas in the array"""
        return int(self.x.size)

    @property
    def n_active(self):
        """Number of antennas switched on"""
        return int(np.count_nonzero(self.active))

    @property
    def coords(self):
        """Antenna coordinates as an (n_tx, 2) array"""
        return np.column_stack((self.x, self.y))

    @property
    def is_thinned(self):
        return self.n_active < self.n_tx

    def __repr__(self):
        return ("ArrayGeometry(R={0:.4g} m, delta={1:.4g} m, n_tx={2}, "
                "n_active={3})".format(self.radius, self.spacing, self.n_tx,
                                       self.n_active))


@dataclass(frozen=True)
class RxPlacement:
    """Single antenna receiver at distance ell and signed angle gamma from
    boresight, in the xz-plane"""

    ell: float
    gamma: float

    def __post_init__(self):
        if not self.ell > 0:
            raise ValueError("Receiver distance must be positive")

        if not abs(self.gamma) < math.pi / 2:
            raise ValueError("Receiver angle must satisfy |gamma| < pi/2")

    @classmethod
    def from_degrees(cls, ell, gamma_deg):
        """Creates a placement from an angle given in degrees"""
        return cls(ell, math.radians(gamma_deg))

    @property
    def position(self):
        """Cartesian receiver position (x, y, z) in metres"""
        return (-self.ell * math.sin(self.gamma), 0.0,
                self.ell * math.cos(self.gamma))

    @property
    def projection_offset(self):
        """Distance between the array centre and the receiver's projection
        onto the array plane"""
        return self.ell * abs(math.sin(self.gamma))

    def mirrored(self):
        """Placement with the angle sign flipped"""
        return RxPlacement(self.ell, -self.gamma)


@dataclass(frozen=True)
class Scenario:
    """Complete link description: array, receiver and radio parameters"""

    geometry: ArrayGeometry
    rx: RxPlacement
    f_c: float
    bandwidth: float
    q_bits: int = 2
    n_sub: int = 512
    tx_power: float = 1e-3
    temperature: float = 290.0

    def __post_init__(self):
        if not self.f_c > 0:
            raise ValueError("Carrier frequency must be positive")

        if self.bandwidth < 0:
            raise ValueError("Bandwidth cannot be negative")

        if not self.bandwidth < 2 * self.f_c:
            raise ValueError("Bandwidth must be smaller than twice the "
                             "carrier frequency")

        if int(self.n_sub) < 1:
            raise ValueError("At least one sub-band is required")

        if int(self.q_bits) < 1:
            raise ValueError("Quantizer resolution must be at least 1 bit")

        if not self.tx_power > 0:
            raise ValueError("Transmit power must be positive")

        if not self.temperature > 0:
            raise ValueError("Temperature must be positive")

    @property
    def wavelength(self):
        """Carrier wavelength (m)"""
        return PhysicalConstants.wavelength(self.f_c)


def build_array(radius, spacing):
    """Builds a circular planar array on a square lattice

    Antennas sit at (i * spacing, j * spacing) for integers i, j, including
    the origin, and are kept when x^2 + y^2 <= radius^2.

    :param radius: aperture radius R (m)
    :type radius: float
    :param spacing: lattice spacing (m)
    :type spacing: float
    :return: array geometry
    :rtype: :class:`ArrayGeometry`
    :raises DegenerateGeometryError: if no lattice point lies inside the disc
    """

    if not radius > 0 or not spacing > 0:
        raise ValueError("Radius and spacing must be positive")

    # largest lattice index that can fall inside the disc
    n_max = int(math.floor(radius / spacing * (1 + _DISC_TOLERANCE)))
    indices = np.arange(-n_max, n_max + 1)

    ii, jj = np.meshgrid(indices, indices, indexing="ij")
    ii = ii.ravel()
    jj = jj.ravel()

    # membership test on integer indices avoids rounding asymmetry
    limit = (radius / spacing) ** 2 * (1 + _DISC_TOLERANCE)
    inside = ii.astype(np.float64) ** 2 + jj.astype(np.float64) ** 2 <= limit

    if not np.any(inside):
        raise DegenerateGeometryError("No lattice point lies inside a disc of "
                                      "radius {0} m".format(radius))

    x = ii[inside] * spacing
    y = jj[inside] * spacing

    geometry = ArrayGeometry(radius=float(radius), spacing=float(spacing),
                             x=x, y=y, active=np.ones(x.size, dtype=bool))

    # compare against the Gauss circle estimate
    estimate = math.pi * radius ** 2 / spacing ** 2

    if estimate > 2500 and abs(geometry.n_tx / estimate - 1) > 0.01:
        logger.warning("Antenna count %i deviates from the area estimate "
                       "%.0f by more than 1%%", geometry.n_tx, estimate)

    logger.info("Built array with %i antennas (R = %.4g m, spacing = %.4g m)",
                geometry.n_tx, radius, spacing)

    return geometry


def distance_to_rx(x, y, rx):
    """Distance between antenna(s) at (x, y, 0) and the receiver

    :param x: antenna x coordinate(s) (m)
    :param y: antenna y coordinate(s) (m)
    :param rx: receiver placement
    :type rx: :class:`RxPlacement`
    :return: distance(s) in metres
    """

    sin_gamma = math.sin(rx.gamma)
    cos_gamma = math.cos(rx.gamma)

    return np.sqrt((x + rx.ell * sin_gamma) ** 2 + y ** 2
                   + (rx.ell * cos_gamma) ** 2)


def rx_projection_class(geometry, rx):
    """Classifies the receiver placement relative to the aperture

    Negative angles are classified as their mirror image; the returned flag
    tells callers to flip designed profiles about the y-axis.

    :param geometry: transmit array
    :type geometry: :class:`ArrayGeometry`
    :param rx: receiver placement
    :type rx: :class:`RxPlacement`
    :return: placement constant and flip flag
    :rtype: Tuple[int, bool]
    """

    flipped = rx.gamma < 0

    if abs(rx.gamma) < PlacementClass.BORESIGHT_TOLERANCE:
        return PlacementClass.BORESIGHT, False

    if rx.projection_offset > geometry.radius:
        return PlacementClass.PROJECTION_OUTSIDE, flipped

    return PlacementClass.PROJECTION_INSIDE, flipped


def fraunhofer_distance(geometry, f_c):
    """Fraunhofer distance 8 R^2 / lambda_c of the aperture

    :param geometry: transmit array (or anything with a `radius`)
    :param f_c: carrier frequency (Hz)
    :return: distance in metres
    :rtype: float
    """

    if not f_c > 0:
        raise ValueError("Carrier frequency must be positive")

    return 8 * geometry.radius ** 2 / PhysicalConstants.wavelength(f_c)


def is_near_field(geometry, rx, f_c):
    """Checks if the receiver sits inside the Fraunhofer distance"""
    return rx.ell < fraunhofer_distance(geometry, f_c)


def half_wavelength_spacing(f_c):
    """Lattice spacing of half the carrier wavelength"""
    return PhysicalConstants.wavelength(f_c) / 2
