"""Line-of-sight channel, beamformed equivalent channel and misfocus analysis"""

import math
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constants import LIGHT_SPEED, PlacementClass
from .geometry import RxPlacement, PlacementError, distance_to_rx
from .workers import parallel_sums

# logger
logger = logging.getLogger("infocus.channel")

TWO_PI = 2 * math.pi

# below this |x| the sinc series is used
_SINC_SERIES_LIMIT = 1e-6

# smallest oracle mesh
MIN_ORACLE_GRID = 256

# oracle rows evaluated at once
_ORACLE_BLOCK_ROWS = 128


def wrap_phase(phases):
    """Reduces phases into [0, 2 pi)"""

    wrapped = np.mod(np.asarray(phases, dtype=np.float64), TWO_PI)

    # np.mod can round up to exactly 2 pi
    wrapped[wrapped >= TWO_PI] = 0.0

    return wrapped


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """Per-antenna phase shifts, aligned with :attr:`ArrayGeometry.x`

    Every antenna is driven with weight exp(j phase) / sqrt(n_tx).
    """

    phases: np.ndarray
    quantized: bool = False
    q_bits: Optional[int] = None

    def __post_init__(self):
        if self.phases.ndim != 1:
            raise ValueError("Phase profile must be one dimensional")

        if np.any(self.phases < 0) or np.any(self.phases >= TWO_PI):
            raise ValueError("Phases must lie in [0, 2 pi)")

        if self.quantized and (self.q_bits is None or self.q_bits < 1):
            raise ValueError("Quantized profiles need a resolution of at "
                             "least 1 bit")

        self.phases.setflags(write=False)

    def __len__(self):
        return int(self.phases.size)

    def weights(self):
        """Unit-magnitude-per-antenna beamforming weights"""
        return np.exp(1j * self.phases) / math.sqrt(self.phases.size)

    def alphabet(self):
        """Phase alphabet of a quantized profile"""

        if not self.quantized:
            raise ValueError("Profile is not quantized")

        levels = 2 ** self.q_bits

        return TWO_PI * np.arange(levels) / levels


@dataclass(frozen=True, eq=False)
class EquivalentChannel:
    """Frequency response g(f) of the beamformed SISO link"""

    freqs: np.ndarray
    gains: np.ndarray
    scenario: Optional[object] = None

    def __post_init__(self):
        if self.freqs.shape != self.gains.shape:
            raise ValueError("Frequency and gain arrays differ in length")

        if self.freqs.size > 1 and np.any(np.diff(self.freqs) <= 0):
            raise ValueError("Frequencies must be strictly increasing")

    def __len__(self):
        return int(self.freqs.size)

    @property
    def power(self):
        """Channel power gains |g(f)|^2"""
        return np.abs(self.gains) ** 2

    def gain_db(self):
        """Channel gain 20 log10 |g(f)|, floored for zero gains"""

        magnitude = np.maximum(np.abs(self.gains), np.finfo(np.float64).tiny)

        return 20 * np.log10(magnitude)


@dataclass(frozen=True)
class SpatialFrequency:
    """Spatial frequency omega = 2 pi (f - f_c) / c in rad/m"""

    omega: float

    @classmethod
    def from_frequency(cls, f, f_c, light_speed=LIGHT_SPEED):
        return cls(TWO_PI * (f - f_c) / light_speed)

    @classmethod
    def band_edge(cls, bandwidth, light_speed=LIGHT_SPEED):
        """Spatial frequency pi B / c at the upper band edge"""
        return cls(math.pi * bandwidth / light_speed)

    def to_frequency(self, f_c, light_speed=LIGHT_SPEED):
        return f_c + light_speed * self.omega / TWO_PI


def sinc(x):
    """Unnormalised sinc, sin(x) / x

    :param x: argument(s)
    :return: sinc value(s)
    """

    x = np.asarray(x, dtype=np.float64)
    small = np.abs(x) < _SINC_SERIES_LIMIT

    # avoid 0/0 in the masked entries
    safe = np.where(small, 1.0, x)
    result = np.where(small, 1 - x ** 2 / 6, np.sin(safe) / safe)

    if result.ndim == 0:
        return float(result)

    return result


def los_channel(x, y, rx, f, light_speed=LIGHT_SPEED):
    """Free space channel between antenna(s) at (x, y, 0) and the receiver

    :param x: antenna x coordinate(s) (m)
    :param y: antenna y coordinate(s) (m)
    :param rx: receiver placement
    :type rx: :class:`~infocus.geometry.RxPlacement`
    :param f: frequency (Hz)
    :return: complex gain c / (2 pi f d) exp(-j 2 pi f d / c)
    """

    f = np.asarray(f, dtype=np.float64)

    if np.any(f <= 0):
        raise ValueError("Frequency must be positive")

    d = distance_to_rx(x, y, rx)

    return light_speed / (TWO_PI * f * d) * np.exp(-1j * TWO_PI * f * d
                                                    / light_speed)


def standard_phase_profile(geometry, rx, f_c, light_speed=LIGHT_SPEED):
    """Centre-frequency matched phase profile 2 pi f_c d(x, y) / c

    :param geometry: transmit array
    :param rx: receiver placement
    :param f_c: carrier frequency (Hz)
    :return: unquantized phase profile
    :rtype: :class:`PhaseProfile`
    """

    if f_c < 0:
        raise ValueError("Carrier frequency cannot be negative")

    d = distance_to_rx(geometry.x, geometry.y, rx)

    return PhaseProfile(wrap_phase(TWO_PI * f_c * d / light_speed))


def equivalent_channel(geometry, rx, profile, freqs, threads=1, scenario=None,
                       light_speed=LIGHT_SPEED):
    """Equivalent SISO channel g(f) = sum_n w_n h_n(f) of the beamformed array

    Antennas switched off in the geometry contribute nothing; the others are
    driven with magnitude 1 / sqrt(n_tx).

    :param geometry: transmit array
    :type geometry: :class:`~infocus.geometry.ArrayGeometry`
    :param rx: receiver placement
    :param profile: phase profile aligned with the geometry
    :type profile: :class:`PhaseProfile`
    :param freqs: strictly increasing frequencies (Hz)
    :param threads: worker threads used for the frequency grid
    :return: equivalent channel
    :rtype: :class:`EquivalentChannel`
    :raises ValueError: if the profile and geometry are not aligned
    """

    if len(profile) != geometry.n_tx:
        raise ValueError("Phase profile has {0} entries but the array has {1} "
                         "antennas".format(len(profile), geometry.n_tx))

    freqs = np.atleast_1d(np.asarray(freqs, dtype=np.float64))

    if np.any(freqs <= 0):
        raise ValueError("Frequencies must be positive")

    active = geometry.active
    phases = np.ascontiguousarray(profile.phases[active])
    dists = np.ascontiguousarray(distance_to_rx(geometry.x[active],
                                                geometry.y[active], rx))

    logger.debug("Evaluating %i antennas at %i frequencies on %i thread(s)",
                 dists.size, freqs.size, threads)

    sums = parallel_sums(phases, dists, freqs, light_speed, threads)
    gains = sums * light_speed / (TWO_PI * freqs * math.sqrt(geometry.n_tx))

    return EquivalentChannel(freqs=freqs, gains=gains, scenario=scenario)


def closed_form_standard(rx, radius, spacing, f, f_c, light_speed=LIGHT_SPEED):
    """Continuous-aperture response of the standard beam at boresight

    g(f) = 2c (d_avg - ell) exp(-j omega d_avg) / (sqrt(pi) R f spacing)
           * sinc(omega (d_avg - ell))

    :param rx: boresight receiver placement
    :param radius: aperture radius R (m)
    :param spacing: lattice spacing (m)
    :param f: frequency or frequencies (Hz)
    :param f_c: carrier frequency (Hz)
    :return: complex response
    :raises PlacementError: if the receiver is not at boresight
    """

    if abs(rx.gamma) >= PlacementClass.BORESIGHT_TOLERANCE:
        raise PlacementError("The closed form only holds at boresight")

    f = np.asarray(f, dtype=np.float64)
    ell = rx.ell

    d_avg = (ell + math.hypot(ell, radius)) / 2
    half_span = d_avg - ell
    omega = TWO_PI * (f - f_c) / light_speed

    scale = 2 * light_speed * half_span / (math.sqrt(math.pi) * radius * f
                                           * spacing)
    value = scale * np.exp(-1j * omega * d_avg) * sinc(omega * half_span)

    if value.ndim == 0:
        return complex(value)

    return value


def misfocus_bandwidth_bound(ell, radius, light_speed=LIGHT_SPEED):
    """Largest bandwidth c / (sqrt(ell^2 + R^2) - ell) the standard beam
    serves with at most 4 dB misfocus loss

    :param ell: receiver distance (m)
    :param radius: aperture radius (m)
    :return: bandwidth in Hz, +inf for a zero aperture
    :rtype: float
    """

    if not ell > 0 or radius < 0:
        raise ValueError("Distance must be positive and radius non-negative")

    if radius == 0:
        return math.inf

    # sqrt(ell^2 + R^2) - ell rewritten to avoid cancellation
    span = radius ** 2 / (math.hypot(ell, radius) + ell)

    return light_speed / span


def itx_quadrature_oracle(rx, radius, spacing, phase_fn, f, grid_n=2048,
                          light_speed=LIGHT_SPEED):
    """Continuous-aperture channel by midpoint quadrature

    Integrates h(x, y, f) exp(j phase_fn(x, y)) over the disc of radius R on
    a grid_n x grid_n mesh covering its bounding square, masking cell centres
    outside the disc, and normalises by sqrt(pi R^2) * spacing.

    :param rx: receiver placement
    :param radius: aperture radius (m)
    :param spacing: lattice spacing of the discrete array being modelled (m)
    :param phase_fn: callable (x, y) -> phase (rad), vectorised
    :param f: frequency (Hz)
    :param grid_n: mesh resolution per side
    :return: complex continuous-aperture response
    """

    if grid_n < MIN_ORACLE_GRID:
        raise ValueError("Oracle mesh must have at least {0} cells per "
                         "side".format(MIN_ORACLE_GRID))

    if radius <= 0:
        return 0j

    cell = 2 * radius / grid_n
    centres = -radius + (np.arange(grid_n) + 0.5) * cell
    total = 0j

    for start in range(0, grid_n, _ORACLE_BLOCK_ROWS):
        xx, yy = np.meshgrid(centres[start:start + _ORACLE_BLOCK_ROWS],
                             centres, indexing="ij")
        inside = xx ** 2 + yy ** 2 <= radius ** 2
        xx = xx[inside]
        yy = yy[inside]

        h = los_channel(xx, yy, rx, f, light_speed=light_speed)
        total += np.sum(h * np.exp(1j * phase_fn(xx, yy)))

    return complex(total * cell ** 2 / (math.sqrt(math.pi) * radius * spacing))


def received_power_along_axis(geometry, profile, f, z_points,
                              light_speed=LIGHT_SPEED):
    """Received power |g|^2 at points (0, 0, z) on the boresight axis

    Shows where the beam defined by `profile` focuses at frequency f.

    :param geometry: transmit array
    :param profile: phase profile aligned with the geometry
    :param f: frequency (Hz)
    :param z_points: positive axial distances (m)
    :return: power for each z
    :rtype: :class:`numpy.ndarray`
    """

    if len(profile) != geometry.n_tx:
        raise ValueError("Phase profile is not aligned with the array")

    active = geometry.active
    weights = profile.weights()[active]
    x = geometry.x[active]
    y = geometry.y[active]

    power = np.empty(len(z_points))

    for i, z in enumerate(z_points):
        gains = los_channel(x, y, RxPlacement(float(z), 0.0), f,
                            light_speed=light_speed)
        power[i] = abs(np.sum(weights * gains)) ** 2

    return power


def focal_distance(geometry, profile, f, z_points, light_speed=LIGHT_SPEED):
    """Axial distance of maximum received power at frequency f

    :return: the entry of `z_points` receiving the most power (m)
    :rtype: float
    """

    z_points = np.asarray(z_points, dtype=np.float64)
    power = received_power_along_axis(geometry, profile, f, z_points,
                                      light_speed=light_speed)

    return float(z_points[int(np.argmax(power))])
