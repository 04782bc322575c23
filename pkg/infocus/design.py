"""InFocus beam design

A designed beam adds a spatial chirp psi(u) to the standard phase profile,
where u is the distance between an antenna and the receiver. The chirp's
instantaneous spatial frequency sweeps [-pi B / c, +pi B / c] across the
aperture, so every frequency in the band finds part of the array in focus.
"""

import math
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .constants import LIGHT_SPEED, PlacementClass
from .geometry import (DegenerateGeometryError, PlacementError,
                       distance_to_rx, rx_projection_class)
from .channel import PhaseProfile, TWO_PI, wrap_phase, standard_phase_profile

# logger
logger = logging.getLogger("infocus.design")

# default chirp grid resolution
DEFAULT_GRID_POINTS = 4096

# relative slack when checking u against a chirp or amplitude domain
_DOMAIN_TOLERANCE = 1e-9

# clipping beyond this relative distance is reported
_CLIP_REPORT_LIMIT = 1e-12

# spectrum rows evaluated at once
_SPECTRUM_BLOCK = 32


@dataclass(frozen=True, eq=False)
class ChirpDesign:
    """One dimensional chirp sampled on a distance grid

    `freq` holds the instantaneous spatial frequency psi'(u) in rad/m and
    `phase` its cumulative integral psi(u), starting at zero.
    """

    u_grid: np.ndarray
    amp: np.ndarray
    freq: np.ndarray
    phase: np.ndarray
    bandwidth: float
    light_speed: float = LIGHT_SPEED

    def __post_init__(self):
        n = self.u_grid.size

        if n < 2:
            raise ValueError("A chirp needs at least two grid points")

        for array in (self.amp, self.freq, self.phase):
            if array.shape != self.u_grid.shape:
                raise ValueError("Chirp arrays must match the grid")

        if np.any(np.diff(self.u_grid) <= 0):
            raise ValueError("Chirp grid must be strictly increasing")

        if np.any(self.amp < 0) or np.any(self.amp > 1):
            raise ValueError("Chirp amplitude must lie in [0, 1]")

        if np.any(np.diff(self.freq) < 0):
            raise ValueError("Chirp frequency must be non-decreasing")

        edge = self.band_edge
        tolerance = _DOMAIN_TOLERANCE * edge

        if abs(self.freq[0] + edge) > tolerance or \
                abs(self.freq[-1] - edge) > tolerance:
            raise ValueError("Chirp frequency must sweep [-pi B / c, pi B / c]")

        if self.phase[0] != 0:
            raise ValueError("Chirp phase must start at zero")

        for array in (self.u_grid, self.amp, self.freq, self.phase):
            array.setflags(write=False)

    def __len__(self):
        return int(self.u_grid.size)

    @property
    def u_start(self):
        return float(self.u_grid[0])

    @property
    def u_end(self):
        return float(self.u_grid[-1])

    @property
    def band_edge(self):
        """Target spatial frequency pi B / c (rad/m)"""
        return math.pi * self.bandwidth / self.light_speed

    @property
    def dispersion_factor(self):
        """Frequency span times spatial span of the chirp"""
        return float((self.freq[-1] - self.freq[0])
                     * (self.u_grid[-1] - self.u_grid[0]))

    def curvature(self):
        """Finite difference estimate of psi''(u)"""
        return np.gradient(self.freq, self.u_grid)

    def phase_at(self, u):
        """Linearly interpolated chirp phase psi(u)"""
        return np.interp(u, self.u_grid, self.phase)


@dataclass(frozen=True, eq=False)
class DesignedBeam:
    """Phase profile phi_std + psi_des together with its design metadata"""

    profile: PhaseProfile
    chirp: Optional[ChirpDesign]
    placement: int
    dispersion_factor: float
    flipped: bool = False

    def __post_init__(self):
        if not PlacementClass.is_valid(self.placement):
            raise ValueError("Invalid placement class")

        if self.dispersion_factor < 0:
            raise ValueError("Dispersion factor cannot be negative")

    @property
    def placement_name(self):
        return PlacementClass.get_name(self.placement)


def _axial_span(ell, radius):
    """sqrt(ell^2 + R^2) - ell without cancellation"""
    return radius ** 2 / (math.hypot(ell, radius) + ell)


def dispersion_factor(ell, radius, bandwidth, light_speed=LIGHT_SPEED):
    """Dispersion factor 2 pi B (sqrt(ell^2 + R^2) - ell) / c of the boresight
    chirp

    Energy leaking outside the target band falls as the factor grows. A unit
    amplitude chirp leaks about 6 % at 32 pi and 4 % at 64 pi, see
    :func:`spectral_leakage`.

    :param ell: receiver distance (m)
    :param radius: aperture radius (m)
    :param bandwidth: bandwidth B (Hz)
    :rtype: float
    """

    if not ell > 0 or radius < 0 or bandwidth < 0:
        raise ValueError("Distance must be positive, radius and bandwidth "
                         "non-negative")

    return TWO_PI * bandwidth * _axial_span(ell, radius) / light_speed


def design_boresight_chirp(ell, radius, bandwidth, n_grid=DEFAULT_GRID_POINTS,
                           light_speed=LIGHT_SPEED):
    """Analytic linear chirp for a receiver on the boresight axis

    psi(s) = alpha (s - ell) + beta (s^2 - ell^2) on s in [ell, sqrt(ell^2 +
    R^2)], with alpha and beta fixed by psi'(ell) = -pi B / c and
    psi'(sqrt(ell^2 + R^2)) = +pi B / c. The constant is chosen so that
    psi(ell) = 0.

    :param ell: receiver distance (m)
    :param radius: aperture radius (m)
    :param bandwidth: bandwidth B (Hz)
    :param n_grid: number of grid points
    :return: chirp design with unit amplitude
    :rtype: :class:`ChirpDesign`
    """

    if not ell > 0 or not radius > 0:
        raise ValueError("Distance and radius must be positive")

    if bandwidth < 0:
        raise ValueError("Bandwidth cannot be negative")

    s_start = float(ell)
    s_end = math.hypot(ell, radius)
    span = _axial_span(ell, radius)

    beta = math.pi * bandwidth / (light_speed * span)
    alpha = -math.pi * bandwidth * (s_end + s_start) / (light_speed * span)
    edge = math.pi * bandwidth / light_speed

    # offsets from ell keep the end points exact when span << ell
    offset = np.linspace(0.0, span, int(n_grid))
    u_grid = s_start + offset

    freq = edge * (2 * offset / span - 1)
    phase = edge * offset * (offset - span) / span

    logger.debug("Boresight chirp alpha = %.6e rad/m, beta = %.6e rad/m^2",
                 alpha, beta)

    return ChirpDesign(u_grid=u_grid, amp=np.ones_like(u_grid), freq=freq,
                       phase=phase, bandwidth=float(bandwidth),
                       light_speed=light_speed)


def _check_domain(u, lower, upper, what):
    """Clips u onto [lower, upper], raising if it lies too far outside"""

    tolerance = _DOMAIN_TOLERANCE * upper

    if np.any(u < lower - tolerance) or np.any(u > upper + tolerance):
        raise PlacementError("Distance outside the {0} domain [{1:.9g}, "
                             "{2:.9g}] m".format(what, lower, upper))

    return np.clip(u, lower, upper)


def amplitude_domain(ell, gamma, radius):
    """Domain [u1, u2] of the amplitude modulation a(u)

    :return: distances between the receiver and the nearest and farthest
        points of the aperture rim
    :rtype: Tuple[float, float]
    """

    offset = ell * math.sin(gamma)
    height = ell * math.cos(gamma)

    return (math.hypot(abs(offset - radius), height),
            math.hypot(offset + radius, height))


def amplitude_modulation_a(u, ell, gamma, radius):
    """Fraction of the circle of distance u around the receiver that lies on
    the aperture

    With p the distance between the projection of the receiver and a point on
    the circle, the cosine rule gives the largest angle at which the circle is
    still inside the disc; a(u) is that angle over pi.

    :param u: distance(s) to the receiver (m)
    :param ell: receiver distance (m)
    :param gamma: receiver angle (rad), positive
    :param radius: aperture radius (m)
    :return: amplitude(s) in [0, 1]
    :raises PlacementError: for non-positive gamma or u outside [u1, u2]
    """

    if not gamma > 0:
        raise PlacementError("Amplitude modulation needs a positive angle")

    u_lo, u_hi = amplitude_domain(ell, gamma, radius)
    u = _check_domain(np.asarray(u, dtype=np.float64), u_lo, u_hi,
                      "amplitude")

    offset = ell * math.sin(gamma)
    height = ell * math.cos(gamma)

    p = np.sqrt(np.maximum(u ** 2 - height ** 2, 0.0))

    # p = 0 only when the projection sits on the rim, where the limit is 0
    safe = np.where(p > 0, p, 1.0)
    arg = np.where(p > 0,
                   (p ** 2 + offset ** 2 - radius ** 2) / (2 * safe * offset),
                   0.0)

    amp = np.arccos(np.clip(arg, -1.0, 1.0)) / math.pi

    if amp.ndim == 0:
        return float(amp)

    return amp


def amplitude_modulation_b(u, ell, gamma, radius):
    """Amplitude modulation for receivers projecting onto the aperture

    Circles around the projection that fit entirely inside the disc have
    amplitude 1; farther out b(u) follows a(u).

    :raises PlacementError: if the receiver does not project onto the aperture
    """

    offset = ell * math.sin(gamma)

    if not gamma > 0 or offset > radius:
        raise PlacementError("b(u) only applies when the receiver projects "
                             "onto the aperture off boresight")

    scalar = np.ndim(u) == 0
    height = ell * math.cos(gamma)
    u_max = math.hypot(radius + offset, height)
    u = _check_domain(np.atleast_1d(np.asarray(u, dtype=np.float64)), height,
                      u_max, "amplitude")

    inner = u <= math.hypot(radius - offset, height)
    amp = np.ones_like(u)

    if np.any(~inner):
        amp[~inner] = amplitude_modulation_a(u[~inner], ell, gamma, radius)

    if scalar:
        return float(amp[0])

    return amp


def stationary_phase_frequency(u_grid, amp, bandwidth,
                               light_speed=LIGHT_SPEED):
    """Instantaneous frequency with psi'' proportional to amp^2

    psi'(u) = 2 pi B int_{u1}^{u} amp^2 / (c int_{u1}^{u2} amp^2) - pi B / c,
    integrated by the composite trapezoid rule on the grid.

    :param u_grid: strictly increasing distances (m)
    :param amp: non-negative amplitude samples on the grid
    :param bandwidth: bandwidth B (Hz)
    :return: psi'(u) samples (rad/m)
    :raises DegenerateGeometryError: if the amplitude integral vanishes
    """

    amp = np.asarray(amp, dtype=np.float64)

    if np.any(amp < 0):
        raise ValueError("Amplitude must be non-negative")

    energy = cumulative_trapezoid(amp ** 2, u_grid, initial=0)
    total = energy[-1]

    if not total > 0:
        raise DegenerateGeometryError("Amplitude modulation integrates to "
                                      "zero")

    edge = math.pi * bandwidth / light_speed

    return 2 * edge * energy / total - edge


def integrate_phase(u_grid, freq):
    """Cumulative trapezoid integral of psi' with psi(u1) = 0"""
    return cumulative_trapezoid(freq, u_grid, initial=0)


def design_modulated_chirp(u_grid, amp, bandwidth, light_speed=LIGHT_SPEED):
    """Builds a chirp whose frequency slope follows the amplitude squared"""

    freq = stationary_phase_frequency(u_grid, amp, bandwidth,
                                      light_speed=light_speed)

    return ChirpDesign(u_grid=u_grid, amp=np.asarray(amp, dtype=np.float64),
                       freq=freq, phase=integrate_phase(u_grid, freq),
                       bandwidth=float(bandwidth), light_speed=light_speed)


def map_chirp_to_2d(chirp, geometry, rx):
    """Evaluates the chirp phase at every antenna's distance to the receiver

    Negative angles reuse the design for |gamma| with the antenna x
    coordinates mirrored.

    :param chirp: chirp designed for |gamma|
    :type chirp: :class:`ChirpDesign`
    :param geometry: transmit array
    :param rx: receiver placement
    :return: psi_des per antenna (rad)
    :rtype: :class:`numpy.ndarray`
    :raises PlacementError: if an antenna lies outside the chirp domain
    """

    if rx.gamma < 0:
        u = distance_to_rx(-geometry.x, geometry.y, rx.mirrored())
    else:
        u = distance_to_rx(geometry.x, geometry.y, rx)

    lower = chirp.u_start
    upper = chirp.u_end
    clipped = _check_domain(u, lower, upper, "chirp")

    if np.any(np.abs(clipped - u) > _CLIP_REPORT_LIMIT * upper):
        logger.warning("Clipped %i antenna distances onto the chirp domain",
                       int(np.count_nonzero(clipped != u)))

    return chirp.phase_at(clipped)


def design_infocus_beam(scenario, n_grid=DEFAULT_GRID_POINTS,
                        light_speed=LIGHT_SPEED):
    """Designs the InFocus phase profile for a scenario

    Boresight receivers use the analytic linear chirp; off boresight the
    chirp follows a(u) when the receiver projects outside the aperture and
    b(u) when it projects onto it.

    :param scenario: link description
    :type scenario: :class:`~infocus.geometry.Scenario`
    :param n_grid: chirp grid resolution
    :return: designed beam with unquantized phases
    :rtype: :class:`DesignedBeam`
    """

    geometry = scenario.geometry
    rx = scenario.rx
    radius = geometry.radius
    bandwidth = scenario.bandwidth

    placement, flipped = rx_projection_class(geometry, rx)
    gamma = abs(rx.gamma)

    if placement == PlacementClass.BORESIGHT:
        chirp = design_boresight_chirp(rx.ell, radius, bandwidth, n_grid,
                                       light_speed=light_speed)
    elif placement == PlacementClass.PROJECTION_OUTSIDE:
        u_lo, u_hi = amplitude_domain(rx.ell, gamma, radius)
        u_grid = np.linspace(u_lo, u_hi, int(n_grid))
        chirp = design_modulated_chirp(
            u_grid, amplitude_modulation_a(u_grid, rx.ell, gamma, radius),
            bandwidth, light_speed=light_speed)
    else:
        height = rx.ell * math.cos(gamma)
        u_hi = math.hypot(radius + rx.ell * math.sin(gamma), height)
        u_grid = np.linspace(height, u_hi, int(n_grid))
        chirp = design_modulated_chirp(
            u_grid, amplitude_modulation_b(u_grid, rx.ell, gamma, radius),
            bandwidth, light_speed=light_speed)

    standard = standard_phase_profile(geometry, rx, scenario.f_c,
                                      light_speed=light_speed)
    psi = map_chirp_to_2d(chirp, geometry, rx)

    profile = PhaseProfile(wrap_phase(standard.phases + psi))
    dispersion = TWO_PI * bandwidth / light_speed * (chirp.u_end
                                                     - chirp.u_start)

    logger.info("Designed InFocus beam (%s%s), chirp on [%.4f, %.4f] m, "
                "dispersion factor %.3f", PlacementClass.get_name(placement),
                ", mirrored" if flipped else "", chirp.u_start, chirp.u_end,
                dispersion)

    return DesignedBeam(profile=profile, chirp=chirp, placement=placement,
                        dispersion_factor=dispersion, flipped=flipped)


def quantize_profile(profile, q_bits):
    """Rounds every phase to the nearest of 2^q uniformly spaced angles

    Distances are circular; a phase exactly between two angles goes to the
    one with the smaller index.

    :param profile: phase profile
    :type profile: :class:`~infocus.channel.PhaseProfile`
    :param q_bits: quantizer resolution (bits)
    :type q_bits: int
    :return: quantized phase profile
    :rtype: :class:`~infocus.channel.PhaseProfile`
    """

    q_bits = int(q_bits)

    if q_bits < 1:
        raise ValueError("Quantizer resolution must be at least 1 bit")

    levels = 2 ** q_bits
    scaled = profile.phases * (levels / TWO_PI)

    index = np.floor(scaled)
    fraction = scaled - index

    # ties stay on the lower index, except at the wrap where index 0 is lower
    index = np.where(fraction > 0.5, index + 1, index)
    index[(fraction == 0.5) & (index == levels - 1)] = levels
    index = np.mod(index, levels)

    return PhaseProfile(TWO_PI * index / levels, quantized=True,
                        q_bits=q_bits)


def chirp_spectrum(chirp, omegas):
    """Spectrum of the one dimensional chirp

    g(omega) = int amp(u) exp(j psi(u)) exp(-j omega u) du, by the trapezoid
    rule on the chirp grid.

    :param chirp: chirp design
    :param omegas: spatial frequencies (rad/m)
    :return: complex spectrum values
    """

    omegas = np.atleast_1d(np.asarray(omegas, dtype=np.float64))
    signal = chirp.amp * np.exp(1j * chirp.phase)
    spectrum = np.empty(omegas.size, dtype=np.complex128)

    for start in range(0, omegas.size, _SPECTRUM_BLOCK):
        block = omegas[start:start + _SPECTRUM_BLOCK]
        kernel = np.exp(-1j * np.outer(block, chirp.u_grid))
        spectrum[start:start + _SPECTRUM_BLOCK] = trapezoid(signal * kernel,
                                                            chirp.u_grid,
                                                            axis=1)

    return spectrum


def chirp_channel_estimate(chirp, geometry, freqs, f_c):
    """Equivalent channel of a designed beam predicted from its chirp spectrum

    Replacing the sum over antennas by an integral over the aperture, with
    area element 2 pi amp(u) u du, gives

        g(f) ~ c g(omega) / (sqrt(n_tx) f spacing^2),  omega = 2 pi (f - f_c) / c

    for the full, unquantized array. The in-band shape of the InFocus channel
    is therefore that of the chirp spectrum over 1 / f.

    :param chirp: chirp the beam was designed with
    :param geometry: transmit array the beam drives
    :param freqs: frequencies (Hz)
    :param f_c: carrier frequency (Hz)
    :return: complex channel estimates
    """

    freqs = np.atleast_1d(np.asarray(freqs, dtype=np.float64))

    if np.any(freqs <= 0):
        raise ValueError("Frequency must be positive")

    omegas = TWO_PI * (freqs - f_c) / chirp.light_speed
    scale = chirp.light_speed / (math.sqrt(geometry.n_tx) * freqs
                                 * geometry.spacing ** 2)

    return scale * chirp_spectrum(chirp, omegas)


def spectral_leakage(chirp, n_omega=4096):
    """Fraction of chirp energy outside [-pi B / c, pi B / c]

    The total comes from Parseval, 2 pi int amp^2 du; the in-band part is
    integrated numerically over n_omega spectrum samples.

    :rtype: float
    """

    if not chirp.bandwidth > 0:
        raise ValueError("Leakage is undefined for zero bandwidth")

    total = TWO_PI * trapezoid(chirp.amp ** 2, chirp.u_grid)

    if not total > 0:
        raise DegenerateGeometryError("Chirp carries no energy")

    edge = chirp.band_edge
    omegas = np.linspace(-edge, edge, int(n_omega))
    in_band = trapezoid(np.abs(chirp_spectrum(chirp, omegas)) ** 2, omegas)

    return float(min(max(1 - in_band / total, 0.0), 1.0))


def spectral_flatness(chirp, n_points=64, central=0.8):
    """Stationary phase check of a chirp

    Evaluates |g(psi'(u))|^2 psi''(u) / (2 pi amp^2(u)) at n_points distances
    spread over the central part of the grid; the stationary phase
    approximation predicts 1 everywhere.

    :param n_points: number of distances checked
    :param central: fraction of the grid covered
    :return: distances and ratios
    :rtype: Tuple[:class:`numpy.ndarray`, :class:`numpy.ndarray`]
    """

    if not 0 < central <= 1:
        raise ValueError("Central fraction must lie in (0, 1]")

    n = len(chirp)
    margin = int(round(n * (1 - central) / 2))
    index = np.unique(np.linspace(margin, n - 1 - margin,
                                  int(n_points)).round().astype(int))

    curvature = chirp.curvature()[index]
    amp = chirp.amp[index]

    if np.any(amp <= 0) or np.any(curvature <= 0):
        raise ValueError("Flatness needs positive amplitude and curvature on "
                         "the checked points")

    spectrum = chirp_spectrum(chirp, chirp.freq[index])
    ratio = np.abs(spectrum) ** 2 * curvature / (TWO_PI * amp ** 2)

    return chirp.u_grid[index], ratio
