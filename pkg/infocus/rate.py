"""Achievable rate of a beamformed link"""

import math
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constants import PLANCK, BOLTZMANN
from .geometry import ArrayGeometry, DegenerateGeometryError

# logger
logger = logging.getLogger("infocus.rate")

# relative bracket width at which the water level bisection stops
WATER_LEVEL_TOLERANCE = 1e-12

# bisection iteration limit
_MAX_BISECTIONS = 200

# relative slack on the thinning disc
_DISC_TOLERANCE = 1e-9


class GainStats(NamedTuple):
    """In-band gain statistics in dB"""

    minimum: float
    maximum: float
    mean: float

    @property
    def ripple(self):
        return self.maximum - self.minimum


@dataclass(frozen=True, eq=False)
class RateResult:
    """Rate together with the power allocation that achieves it"""

    rate_bps: float
    allocation: np.ndarray
    water_level: float
    subband_freqs: np.ndarray

    def __post_init__(self):
        if self.rate_bps < 0:
            raise ValueError("Rate cannot be negative")

        if np.any(self.allocation < 0):
            raise ValueError("Power allocation cannot be negative")

        if self.allocation.shape != self.subband_freqs.shape:
            raise ValueError("Allocation and sub-band grid differ in length")

    @property
    def total_power(self):
        return float(np.sum(self.allocation))


def noise_psd(f, temperature):
    """Thermal noise power spectral density hf / (exp(hf / kT) - 1)

    :param f: frequency or frequencies (Hz)
    :param temperature: temperature (K)
    :return: noise PSD (W/Hz)
    """

    f = np.asarray(f, dtype=np.float64)

    if np.any(f <= 0) or not temperature > 0:
        raise ValueError("Frequency and temperature must be positive")

    energy = PLANCK * f
    psd = energy / np.expm1(energy / (BOLTZMANN * temperature))

    if psd.ndim == 0:
        return float(psd)

    return psd


def subband_frequencies(f_c, bandwidth, n_sub):
    """Sub-band centre frequencies

    n_sub points equally spaced over [f_c - B/2, f_c + B/2], both edges
    included; a single sub-band sits at f_c.

    :rtype: :class:`numpy.ndarray`
    """

    n_sub = int(n_sub)

    if n_sub < 1:
        raise ValueError("At least one sub-band is required")

    if n_sub == 1:
        return np.array([float(f_c)])

    if not bandwidth > 0:
        raise ValueError("Several sub-bands need a positive bandwidth")

    return np.linspace(f_c - bandwidth / 2, f_c + bandwidth / 2, n_sub)


def _snr_coefficients(gains, noise, bandwidth, n_sub):
    """Per unit power SNR n_sub g_k / (n_k B) of every sub-band"""

    gains = np.asarray(gains, dtype=np.float64)
    noise = np.asarray(noise, dtype=np.float64)

    if gains.shape != noise.shape:
        raise ValueError("Gain and noise arrays differ in length")

    if np.any(gains < 0) or np.any(noise <= 0):
        raise ValueError("Gains must be non-negative and noise positive")

    if not bandwidth > 0:
        raise ValueError("Bandwidth must be positive")

    return n_sub * gains / (noise * bandwidth)


def solve_waterfill(gains, noise, bandwidth, n_sub, eta):
    """Water-filling power allocation and its water level

    Maximises sum_k log2(1 + eta_k c_k) subject to sum_k eta_k = eta, with
    c_k = n_sub g_k / (n_k B). The level mu is bracketed by bisection and
    then solved exactly on the resulting active set.

    :param gains: channel power gains |g(f_k)|^2
    :param noise: noise PSD n(f_k) (W/Hz)
    :param bandwidth: total bandwidth B (Hz)
    :param n_sub: number of sub-bands
    :param eta: total transmit power (W)
    :return: allocation (W) and water level mu (W)
    :rtype: Tuple[:class:`numpy.ndarray`, float]
    :raises ValueError: if every gain is zero
    """

    if not eta > 0:
        raise ValueError("Transmit power must be positive")

    coefficients = _snr_coefficients(gains, noise, bandwidth, n_sub)
    usable = coefficients > 0

    if not np.any(usable):
        raise ValueError("Water-filling needs at least one positive gain")

    inverse = np.full(coefficients.shape, np.inf)
    inverse[usable] = 1 / coefficients[usable]

    def excess(level):
        return np.sum(np.maximum(level - inverse[usable], 0.0)) - eta

    low = 0.0
    high = float(np.max(inverse[usable])) + eta

    for _ in range(_MAX_BISECTIONS):
        if high - low <= WATER_LEVEL_TOLERANCE * high:
            break

        middle = (low + high) / 2

        if excess(middle) > 0:
            high = middle
        else:
            low = middle

    level = (low + high) / 2

    # exact level on the active set, repeated while the set changes
    active = inverse < level

    if not np.any(active):
        active = inverse == np.min(inverse)

    for _ in range(coefficients.size):
        level = (eta + np.sum(inverse[active])) / np.count_nonzero(active)
        updated = inverse < level

        if np.array_equal(updated, active) or not np.any(updated):
            break

        active = updated

    allocation = np.where(active, np.maximum(level - inverse, 0.0), 0.0)
    allocation *= eta / np.sum(allocation)

    logger.debug("Water level %.6e W, %i of %i sub-bands active", level,
                 int(np.count_nonzero(allocation)), allocation.size)

    return allocation, float(level)


def waterfill(gains, noise, bandwidth, n_sub, eta):
    """Water-filling power allocation over the sub-bands

    :return: per sub-band powers summing to eta (W)
    :rtype: :class:`numpy.ndarray`
    """

    return solve_waterfill(gains, noise, bandwidth, n_sub, eta)[0]


def rate_from_allocation(allocation, gains, noise, bandwidth, n_sub):
    """Rate (B / n_sub) sum_k log2(1 + eta_k n_sub g_k / (n_k B)) in bit/s"""

    coefficients = _snr_coefficients(gains, noise, bandwidth, n_sub)

    return float(bandwidth / n_sub
                 * np.sum(np.log2(1 + np.asarray(allocation) * coefficients)))


def achievable_rate(channel, scenario):
    """Achievable rate of the channel with water-filling power allocation

    :param channel: channel sampled on the scenario's sub-band grid
    :type channel: :class:`~infocus.channel.EquivalentChannel`
    :param scenario: link description
    :type scenario: :class:`~infocus.geometry.Scenario`
    :rtype: :class:`RateResult`
    """

    n_sub = int(scenario.n_sub)

    if len(channel) != n_sub:
        raise ValueError("Channel has {0} samples but the scenario uses {1} "
                         "sub-bands".format(len(channel), n_sub))

    gains = channel.power
    noise = noise_psd(channel.freqs, scenario.temperature)

    if not np.any(gains > 0):
        allocation = np.full(n_sub, scenario.tx_power / n_sub)

        return RateResult(rate_bps=0.0, allocation=allocation,
                          water_level=0.0, subband_freqs=channel.freqs)

    allocation, level = solve_waterfill(gains, noise, scenario.bandwidth,
                                        n_sub, scenario.tx_power)
    rate = rate_from_allocation(allocation, gains, noise, scenario.bandwidth,
                                n_sub)

    logger.debug("Achievable rate %.6e bit/s", rate)

    return RateResult(rate_bps=rate, allocation=allocation, water_level=level,
                      subband_freqs=channel.freqs)


def thin_array(geometry, delta_fraction):
    """Switches off antennas outside the disc of radius R sqrt(delta)

    Switched off antennas keep their place in the geometry, so weights of the
    remaining ones keep the magnitude 1 / sqrt(n_tx).

    :param geometry: full transmit array
    :type geometry: :class:`~infocus.geometry.ArrayGeometry`
    :param delta_fraction: target fraction of active antennas, in (0, 1]
    :return: geometry with the reduced active set
    :rtype: :class:`~infocus.geometry.ArrayGeometry`
    :raises DegenerateGeometryError: if no antenna survives
    """

    if not 0 < delta_fraction <= 1:
        raise ValueError("Thinning fraction must lie in (0, 1]")

    limit = geometry.radius ** 2 * delta_fraction * (1 + _DISC_TOLERANCE)
    active = geometry.active & (geometry.x ** 2 + geometry.y ** 2 <= limit)

    if not np.any(active):
        raise DegenerateGeometryError("No antenna lies within radius {0:.4g} m"
                                      .format(geometry.radius
                                              * math.sqrt(delta_fraction)))

    thinned = ArrayGeometry(radius=geometry.radius, spacing=geometry.spacing,
                            x=geometry.x, y=geometry.y, active=active)

    logger.info("Thinned array to %i of %i antennas (delta = %.3g)",
                thinned.n_active, thinned.n_tx, delta_fraction)

    return thinned


def in_band_gain_stats(channel):
    """Minimum, maximum and mean of 20 log10 |g(f_k)| over the channel

    :param channel: equivalent channel
    :rtype: :class:`GainStats`
    """

    if len(channel) == 0:
        raise ValueError("Channel has no samples")

    gain_db = channel.gain_db()

    return GainStats(float(np.min(gain_db)), float(np.max(gain_db)),
                     float(np.mean(gain_db)))
