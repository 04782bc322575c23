"""Beamformer class tests"""

import numpy as np
import pytest

from infocus.beam import Beam, InFocusBeam, StandardBeam, ThinnedStandardBeam
from infocus.channel import standard_phase_profile
from infocus.constants import BeamType

from conftest import make_scenario


@pytest.mark.parametrize("name,cls", [
    (BeamType.STANDARD, StandardBeam),
    (BeamType.INFOCUS, InFocusBeam),
    (BeamType.THINNED_STANDARD, ThinnedStandardBeam),
])
def test_load_from_name(small_array, name, cls):
    beam = Beam.load_from_name(name, make_scenario(small_array, ell=0.05))

    assert isinstance(beam, cls)
    assert beam.name == name


def test_unknown_beam(small_array):
    with pytest.raises(ValueError):
        Beam.load_from_name("wide", make_scenario(small_array))


def test_standard_beam_quantizes(small_array):
    scenario = make_scenario(small_array, q_bits=3)

    quantized = StandardBeam(scenario).profile()
    continuous = StandardBeam(scenario, quantize=False).profile()

    assert quantized.quantized and quantized.q_bits == 3
    assert not continuous.quantized
    assert np.array_equal(continuous.phases,
                          standard_phase_profile(small_array, scenario.rx,
                                                 scenario.f_c).phases)


def test_profile_is_cached(small_array):
    beam = StandardBeam(make_scenario(small_array))

    assert beam.profile() is beam.profile()


def test_infocus_beam_metadata(small_array):
    beam = InFocusBeam(make_scenario(small_array, ell=0.05, gamma_deg=30),
                       chirp_points=512)

    assert beam.dispersion_factor > 0
    assert beam.designed is not None
    assert beam.placement_name == "projection-outside"
    assert StandardBeam(beam.scenario).dispersion_factor == 0


def test_thinned_beam_switches_off_antennas(fast_array):
    beam = ThinnedStandardBeam(make_scenario(fast_array, ell=0.05), 0.36)

    assert beam.geometry.n_tx == fast_array.n_tx
    assert beam.geometry.n_active < fast_array.n_tx
    assert not fast_array.is_thinned


def test_subband_rate(small_array):
    scenario = make_scenario(small_array, ell=0.05, n_sub=16)
    beam = StandardBeam(scenario)

    channel = beam.subband_channel()
    result = beam.rate(channel)

    assert len(channel) == 16
    assert channel.scenario is scenario
    assert result.rate_bps > 0
    assert result.rate_bps == beam.rate().rate_bps


def test_thread_count_does_not_change_rate(fast_array):
    scenario = make_scenario(fast_array, ell=0.05, gamma_deg=20, n_sub=32)

    serial = InFocusBeam(scenario, chirp_points=1024, threads=1).rate()
    parallel = InFocusBeam(scenario, chirp_points=1024, threads=3).rate()

    assert serial.rate_bps == parallel.rate_bps
