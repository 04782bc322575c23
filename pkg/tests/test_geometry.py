"""Array geometry and receiver placement tests"""

import math

import numpy as np
import pytest

from infocus.constants import PlacementClass
from infocus.geometry import (ArrayGeometry, RxPlacement, Scenario,
                              build_array, distance_to_rx, fraunhofer_distance,
                              half_wavelength_spacing, is_near_field,
                              rx_projection_class)

from conftest import index_map


def test_thirteen_antennas_in_two_spacing_disc():
    geometry = build_array(1e-3, 5e-4)

    assert geometry.n_tx == 13
    assert geometry.n_active == 13
    assert not geometry.is_thinned


def test_tiny_disc_keeps_only_origin():
    geometry = build_array(0.4 * 5e-4, 5e-4)

    assert geometry.n_tx == 1
    assert geometry.x[0] == 0 and geometry.y[0] == 0


def test_antennas_inside_disc_and_on_lattice(small_array):
    radius = small_array.radius

    assert np.all(small_array.x ** 2 + small_array.y ** 2
                  <= radius ** 2 * (1 + 1e-9))

    for coordinate in (small_array.x, small_array.y):
        steps = coordinate / small_array.spacing
        assert np.allclose(steps, steps.round(), atol=1e-9)


def test_lattice_symmetry(small_array):
    points = set(index_map(small_array))

    for i, j in points:
        assert (-i, j) in points
        assert (i, -j) in points
        assert (-i, -j) in points


def test_centroid_at_origin(small_array):
    assert abs(np.mean(small_array.x)) < small_array.spacing
    assert abs(np.mean(small_array.y)) < small_array.spacing


def test_area_consistency():
    geometry = build_array(0.025, 5e-4)
    ratio = geometry.n_tx * geometry.spacing ** 2 / (math.pi
                                                      * geometry.radius ** 2)

    assert 0.95 <= ratio <= 1.05


def test_array_is_read_only(small_array):
    with pytest.raises(ValueError):
        small_array.x[0] = 1.0


@pytest.mark.parametrize("radius,spacing", [(0, 5e-4), (0.1, 0), (-1, 5e-4)])
def test_invalid_array_arguments(radius, spacing):
    with pytest.raises(ValueError):
        build_array(radius, spacing)


@pytest.mark.slow
def test_full_array_count(full_array):
    assert full_array.n_tx == pytest.approx(124980, rel=0.01)


@pytest.mark.parametrize("x,y,gamma_deg,expected", [
    (0.0, 0.0, 0.0, 0.15),
    (0.0, 0.0, 60.0, 0.15),
    (0.1, 0.0, 0.0, 0.180278),
])
def test_distance_examples(x, y, gamma_deg, expected):
    rx = RxPlacement.from_degrees(0.15, gamma_deg)

    assert distance_to_rx(x, y, rx) == pytest.approx(expected, abs=1e-6)


def test_distance_matches_cartesian_position(small_array):
    rx = RxPlacement.from_degrees(0.2, -35)
    px, py, pz = rx.position

    expected = np.sqrt((small_array.x - px) ** 2 + (small_array.y - py) ** 2
                       + pz ** 2)

    assert np.allclose(distance_to_rx(small_array.x, small_array.y, rx),
                       expected, rtol=1e-12)
    assert np.all(distance_to_rx(small_array.x, small_array.y, rx)
                  >= rx.ell * math.cos(rx.gamma))


def test_position_of_receiver():
    rx = RxPlacement.from_degrees(0.15, 30)
    x, y, z = rx.position

    assert x == pytest.approx(-0.075)
    assert y == 0
    assert z == pytest.approx(0.15 * math.cos(math.radians(30)))


@pytest.mark.parametrize("ell,gamma", [(0, 0), (-0.1, 0), (0.1, math.pi / 2),
                                       (0.1, -2.0)])
def test_invalid_placement(ell, gamma):
    with pytest.raises(ValueError):
        RxPlacement(ell, gamma)


@pytest.mark.parametrize("gamma_deg,placement,flipped", [
    (60, PlacementClass.PROJECTION_OUTSIDE, False),
    (15, PlacementClass.PROJECTION_INSIDE, False),
    (0, PlacementClass.BORESIGHT, False),
    (-60, PlacementClass.PROJECTION_OUTSIDE, True),
    (-15, PlacementClass.PROJECTION_INSIDE, True),
])
def test_projection_class(coarse_full_array, gamma_deg, placement, flipped):
    rx = RxPlacement.from_degrees(0.15, gamma_deg)

    assert rx_projection_class(coarse_full_array, rx) == (placement, flipped)


def test_projection_class_symmetric_under_mirroring(coarse_full_array):
    for gamma_deg in np.linspace(-80, 80, 17):
        rx = RxPlacement.from_degrees(0.15, gamma_deg)
        placement, flipped = rx_projection_class(coarse_full_array, rx)
        mirrored, mirrored_flip = rx_projection_class(coarse_full_array,
                                                      rx.mirrored())

        assert placement == mirrored
        assert flipped != mirrored_flip or gamma_deg == 0


def test_tiny_angle_is_boresight(coarse_full_array):
    rx = RxPlacement(0.15, 1e-12)

    assert rx_projection_class(coarse_full_array, rx)[0] == \
        PlacementClass.BORESIGHT


def test_fraunhofer_distance():
    assert fraunhofer_distance(build_array(0.05, 5e-3), 6e10) == \
        pytest.approx(4.0, rel=1e-2)
    assert fraunhofer_distance(build_array(0.1, 5e-3), 3e11) == \
        pytest.approx(80.0, rel=1e-2)


def test_fraunhofer_distance_vanishes_with_radius():
    geometry = ArrayGeometry(radius=1e-9, spacing=1e-3, x=np.zeros(1),
                             y=np.zeros(1), active=np.ones(1, dtype=bool))

    assert fraunhofer_distance(geometry, 3e11) < 1e-12


def test_near_field_label(fast_array):
    assert is_near_field(fast_array, RxPlacement(0.15, 0), 3e11)
    assert not is_near_field(fast_array, RxPlacement(10.0, 0), 3e11)


def test_half_wavelength_spacing():
    assert half_wavelength_spacing(3e11) == pytest.approx(5e-4, rel=1e-3)


def test_scenario_invariants(small_array):
    rx = RxPlacement(0.15, 0)

    with pytest.raises(ValueError):
        Scenario(small_array, rx, f_c=3e11, bandwidth=6e11)

    with pytest.raises(ValueError):
        Scenario(small_array, rx, f_c=3e11, bandwidth=4e10, n_sub=0)

    with pytest.raises(ValueError):
        Scenario(small_array, rx, f_c=3e11, bandwidth=4e10, q_bits=0)

    with pytest.raises(ValueError):
        Scenario(small_array, rx, f_c=3e11, bandwidth=4e10, tx_power=0)

    scenario = Scenario(small_array, rx, f_c=3e11, bandwidth=4e10)
    assert scenario.wavelength == pytest.approx(1e-3, rel=1e-3)
