"""Full scale checks on the 10 cm aperture

These build the ~125k antenna array and are skipped with -m "not slow".
"""

import math

import numpy as np
import pytest

from infocus.beam import Beam, InFocusBeam, StandardBeam
from infocus.channel import (closed_form_standard, equivalent_channel,
                             standard_phase_profile)
from infocus.constants import BeamType
from infocus.design import chirp_channel_estimate
from infocus.geometry import RxPlacement

from conftest import F_C, ROUND_C, make_scenario

pytestmark = pytest.mark.slow

# sub-bands used by most rate checks
N_SUB = 128


def _rate(name, geometry, quantize=True, thin_delta=0.36, n_sub=N_SUB,
          **kwargs):
    scenario = make_scenario(geometry, n_sub=n_sub, **kwargs)
    beam = Beam.load_from_name(name, scenario, thin_delta=thin_delta,
                               quantize=quantize, threads=4)

    return beam.rate().rate_bps


def test_misfocus_loss_at_310_ghz(full_array):
    rx = RxPlacement(0.15, 0)
    profile = standard_phase_profile(full_array, rx, 3e11,
                                     light_speed=ROUND_C)
    channel = equivalent_channel(full_array, rx, profile, [3e11, 3.1e11],
                                 threads=4, light_speed=ROUND_C)

    loss_db = 10 * math.log10(channel.power[1] / channel.power[0])

    closed = closed_form_standard(rx, full_array.radius, full_array.spacing,
                                  np.array([3e11, 3.1e11]), 3e11,
                                  light_speed=ROUND_C)
    closed_db = 20 * math.log10(abs(closed[1]) / abs(closed[0]))

    assert loss_db == pytest.approx(-41, abs=1.0)
    assert loss_db == pytest.approx(closed_db, abs=1.0)


def _in_band(scenario, points=73):
    """Central 90 % of the band"""
    return np.linspace(F_C - 0.45 * scenario.bandwidth,
                       F_C + 0.45 * scenario.bandwidth, points)


@pytest.mark.parametrize("gamma_deg", [0, 15, 60])
def test_infocus_response_follows_chirp_spectrum(full_array, gamma_deg):
    scenario = make_scenario(full_array, gamma_deg=gamma_deg, n_sub=N_SUB)
    infocus = InFocusBeam(scenario, quantize=False, threads=4)
    freqs = _in_band(scenario)

    actual = np.abs(infocus.channel(freqs).gains)
    estimate = np.abs(chirp_channel_estimate(infocus.designed.chirp,
                                             full_array, freqs, F_C))

    assert np.max(np.abs(actual - estimate)) <= 0.05 * np.max(estimate)


# Ripple follows the chirp spectrum, whose dispersion factor at 15 cm on
# boresight is about 8 pi. At 15 degrees the standard beam's band edges do
# not fall on a spectral null.
@pytest.mark.parametrize("gamma_deg,max_ripple_db,min_margin_db", [
    (0, 9.0, 20.0),
    (15, 6.0, 10.0),
    (60, 6.0, 20.0)
])
def test_infocus_gain_is_flat_across_band(full_array, gamma_deg,
                                          max_ripple_db, min_margin_db):
    scenario = make_scenario(full_array, gamma_deg=gamma_deg, n_sub=N_SUB)
    infocus = InFocusBeam(scenario, quantize=False, threads=4)
    standard = StandardBeam(scenario, quantize=False, threads=4)

    edges = [F_C - scenario.bandwidth / 2, F_C + scenario.bandwidth / 2]

    gain_db = infocus.channel(_in_band(scenario)).gain_db()
    edge_db = standard.channel(edges).gain_db()

    assert np.max(gain_db) - np.min(gain_db) <= max_ripple_db
    assert np.min(gain_db) >= np.max(edge_db) + min_margin_db


@pytest.mark.parametrize("gamma_deg", [30, 60])
def test_infocus_beats_standard_off_boresight(full_array, gamma_deg):
    assert _rate(BeamType.INFOCUS, full_array, gamma_deg=gamma_deg) > \
        _rate(BeamType.STANDARD, full_array, gamma_deg=gamma_deg)


@pytest.mark.parametrize("ell", [0.4, 0.6])
def test_far_boresight_rates_agree(full_array, ell):
    infocus = _rate(BeamType.INFOCUS, full_array, ell=ell, n_sub=512)
    standard = _rate(BeamType.STANDARD, full_array, ell=ell, n_sub=512)

    assert infocus == pytest.approx(standard, rel=0.02)


def test_infocus_never_loses_over_angles(full_array):
    for gamma_deg in np.linspace(-75, 75, 31):
        infocus = _rate(BeamType.INFOCUS, full_array, gamma_deg=gamma_deg)
        standard = _rate(BeamType.STANDARD, full_array, gamma_deg=gamma_deg)

        assert infocus >= standard * (1 - 5e-3), gamma_deg


def test_infocus_beats_thinned_array(full_array):
    infocus = _rate(BeamType.INFOCUS, full_array)

    for delta in np.linspace(0.1, 1.0, 10):
        assert infocus > _rate(BeamType.THINNED_STANDARD, full_array,
                               thin_delta=delta), delta


def test_two_bit_phase_shifters_suffice(full_array):
    rates = [_rate(BeamType.INFOCUS, full_array, q_bits=q)
             for q in range(1, 7)]

    for lower, higher in zip(rates[:-1], rates[1:]):
        assert higher >= lower * (1 - 1e-3)

    assert rates[1] >= 0.9 * rates[-1]
