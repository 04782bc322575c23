"""Noise, water-filling and rate tests"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from infocus.beam import Beam
from infocus.channel import EquivalentChannel
from infocus.constants import BOLTZMANN, PLANCK, BeamType
from infocus.geometry import ArrayGeometry, DegenerateGeometryError
from infocus.rate import (GainStats, RateResult, achievable_rate,
                          in_band_gain_stats, noise_psd, rate_from_allocation,
                          solve_waterfill, subband_frequencies, thin_array,
                          waterfill)

from conftest import make_scenario


def _channel(scenario, gains):
    freqs = subband_frequencies(scenario.f_c, scenario.bandwidth,
                                scenario.n_sub)

    return EquivalentChannel(freqs=freqs,
                             gains=np.asarray(gains, dtype=np.complex128))


def test_noise_at_300_ghz():
    assert noise_psd(3e11, 290) == pytest.approx(3.905e-21, rel=1e-3)


def test_noise_low_frequency_limit():
    assert noise_psd(1e6, 290) == pytest.approx(BOLTZMANN * 290, rel=1e-6)


def test_noise_decreases_with_frequency():
    psd = noise_psd(np.logspace(9, 14, 50), 290)

    assert np.all(np.diff(psd) < 0)


def test_noise_half_point():
    temperature = 290
    kt = BOLTZMANN * temperature

    f_half = brentq(lambda f: noise_psd(f, temperature) - kt / 2, 1e11, 1e14)

    assert PLANCK * f_half / kt == pytest.approx(1.2564, abs=1e-3)


def test_noise_rejects_bad_input():
    with pytest.raises(ValueError):
        noise_psd(0.0, 290)

    with pytest.raises(ValueError):
        noise_psd(3e11, 0)


def test_subband_frequencies():
    freqs = subband_frequencies(3e11, 4e10, 5)

    assert np.allclose(freqs, [2.8e11, 2.9e11, 3e11, 3.1e11, 3.2e11])
    assert np.array_equal(subband_frequencies(3e11, 4e10, 1), [3e11])
    assert np.array_equal(subband_frequencies(3e11, 0.0, 1), [3e11])


def test_subband_frequencies_arguments():
    with pytest.raises(ValueError):
        subband_frequencies(3e11, 0.0, 4)

    with pytest.raises(ValueError):
        subband_frequencies(3e11, 4e10, 0)


def test_uniform_gains_share_power_equally():
    allocation = waterfill(np.ones(8), np.ones(8), 8.0, 8, 1e-3)

    assert np.allclose(allocation, 1e-3 / 8, rtol=1e-12)


def test_waterfill_drops_dead_band():
    allocation, level = solve_waterfill(np.array([1.0, 0.0]), np.ones(2), 2.0,
                                        2, 1.0)

    assert np.allclose(allocation, [1.0, 0.0])
    assert level == pytest.approx(2.0)


def test_waterfill_two_bands_both_active():
    allocation, level = solve_waterfill(np.array([1.25, 0.75]), np.ones(2),
                                        2.0, 2, 1.0)

    assert level == pytest.approx(47 / 30, rel=1e-9)
    assert np.allclose(allocation, [23 / 30, 7 / 30], rtol=1e-9, atol=0)


def test_waterfill_two_bands_one_active():
    allocation, level = solve_waterfill(np.array([1.25, 0.75]), np.ones(2),
                                        2.0, 2, 0.4)

    assert level == pytest.approx(1.2, rel=1e-9)
    assert np.allclose(allocation, [0.4, 0.0])


def test_waterfill_needs_a_positive_gain():
    with pytest.raises(ValueError):
        waterfill(np.zeros(4), np.ones(4), 4.0, 4, 1.0)

    with pytest.raises(ValueError):
        waterfill(np.ones(4), np.ones(4), 4.0, 4, 0.0)


def test_waterfill_is_optimal():
    rng = np.random.default_rng(7)
    gains = rng.exponential(size=32)
    noise = np.full(32, 4e-21)
    bandwidth = 4e10
    eta = 1e-3

    allocation = waterfill(gains, noise, bandwidth, 32, eta)
    best = rate_from_allocation(allocation, gains, noise, bandwidth, 32)

    assert np.sum(allocation) == pytest.approx(eta, rel=1e-12)
    assert np.all(allocation >= 0)

    for _ in range(50):
        source, target = rng.choice(32, size=2, replace=False)
        moved = min(allocation[source], eta * 1e-3)
        perturbed = allocation.copy()
        perturbed[source] -= moved
        perturbed[target] += moved

        assert rate_from_allocation(perturbed, gains, noise, bandwidth, 32) \
            <= best * (1 + 1e-12)


@pytest.mark.parametrize("name", BeamType.get_beam_types())
@pytest.mark.parametrize("gamma_deg", [0, 20, 60])
def test_waterfill_is_optimal_on_array_channels(fast_array, name, gamma_deg):
    scenario = make_scenario(fast_array, gamma_deg=gamma_deg, n_sub=32)
    beam = Beam.load_from_name(name, scenario)
    channel = beam.subband_channel()

    result = beam.rate(channel)
    gains = channel.power
    noise = noise_psd(channel.freqs, scenario.temperature)
    allocation = result.allocation

    assert result.total_power == pytest.approx(scenario.tx_power, rel=1e-12)
    assert result.rate_bps == rate_from_allocation(
        allocation, gains, noise, scenario.bandwidth, 32)

    rng = np.random.default_rng(11)

    for _ in range(50):
        source, target = rng.choice(32, size=2, replace=False)
        moved = min(allocation[source], scenario.tx_power * 1e-3)
        perturbed = allocation.copy()
        perturbed[source] -= moved
        perturbed[target] += moved

        assert rate_from_allocation(perturbed, gains, noise,
                                    scenario.bandwidth, 32) <= \
            result.rate_bps * (1 + 1e-12)


def test_rate_invariant_to_joint_scaling():
    gains = np.linspace(0.5, 2.0, 16)
    noise = np.full(16, 3e-21)

    allocation = waterfill(gains, noise, 4e10, 16, 1e-3)
    rate = rate_from_allocation(allocation, gains, noise, 4e10, 16)

    scaled_allocation = waterfill(gains * 1e3, noise * 1e3, 4e10, 16, 1e-3)
    scaled = rate_from_allocation(scaled_allocation, gains * 1e3, noise * 1e3,
                                  4e10, 16)

    assert scaled == pytest.approx(rate, rel=1e-9)


def test_zero_channel_has_zero_rate(small_array):
    scenario = make_scenario(small_array, n_sub=8)

    result = achievable_rate(_channel(scenario, np.zeros(8)), scenario)

    assert result.rate_bps == 0
    assert result.total_power == pytest.approx(scenario.tx_power)


def test_single_subband_rate(small_array):
    scenario = make_scenario(small_array, n_sub=1)
    gain = 1e-4

    result = achievable_rate(_channel(scenario, [math.sqrt(gain)]), scenario)
    snr = scenario.tx_power * gain / (noise_psd(scenario.f_c, 290)
                                      * scenario.bandwidth)

    assert result.rate_bps == pytest.approx(scenario.bandwidth
                                            * math.log2(1 + snr), rel=1e-12)
    assert np.allclose(result.allocation, [scenario.tx_power])


def test_rate_grows_with_gain(small_array):
    scenario = make_scenario(small_array, n_sub=8)
    gains = np.linspace(1e-3, 2e-3, 8)

    low = achievable_rate(_channel(scenario, gains), scenario)
    high = achievable_rate(_channel(scenario, 2 * gains), scenario)

    assert high.rate_bps > low.rate_bps > 0
    assert isinstance(low, RateResult)


def test_rate_needs_matching_grid(small_array):
    scenario = make_scenario(small_array, n_sub=8)
    freqs = np.linspace(2.8e11, 3.2e11, 4)

    with pytest.raises(ValueError):
        achievable_rate(EquivalentChannel(freqs=freqs,
                                          gains=np.ones(4, dtype=complex)),
                        scenario)


def test_rate_result_validation():
    with pytest.raises(ValueError):
        RateResult(rate_bps=-1.0, allocation=np.zeros(2), water_level=0.0,
                   subband_freqs=np.ones(2))

    with pytest.raises(ValueError):
        RateResult(rate_bps=1.0, allocation=np.zeros(3), water_level=0.0,
                   subband_freqs=np.ones(2))


def test_thinning_keeps_requested_fraction(fast_array):
    thinned = thin_array(fast_array, 0.36)

    assert thinned.n_tx == fast_array.n_tx
    assert thinned.radius == fast_array.radius
    assert thinned.is_thinned
    assert thinned.n_active / fast_array.n_tx == pytest.approx(0.36,
                                                               abs=0.02)
    assert np.all(thinned.x[thinned.active] ** 2
                  + thinned.y[thinned.active] ** 2
                  <= 0.36 * fast_array.radius ** 2 * (1 + 1e-9))


def test_thinning_whole_array(fast_array):
    assert thin_array(fast_array, 1.0).n_active == fast_array.n_tx


def test_thinning_arguments(fast_array):
    with pytest.raises(ValueError):
        thin_array(fast_array, 0.0)

    with pytest.raises(ValueError):
        thin_array(fast_array, 1.5)


def test_thinning_without_survivors():
    geometry = ArrayGeometry(radius=2e-3, spacing=1e-3, x=np.array([1e-3]),
                             y=np.array([0.0]), active=np.array([True]))

    with pytest.raises(DegenerateGeometryError):
        thin_array(geometry, 0.01)


def test_gain_stats():
    channel = EquivalentChannel(freqs=np.array([1.0, 2.0]),
                                gains=np.array([1.0, 0.1j]))

    stats = in_band_gain_stats(channel)

    assert isinstance(stats, GainStats)
    assert stats.minimum == pytest.approx(-20)
    assert stats.maximum == pytest.approx(0)
    assert stats.mean == pytest.approx(-10)
    assert stats.ripple == pytest.approx(20)
