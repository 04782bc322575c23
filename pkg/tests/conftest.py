"""Shared fixtures"""

import math

import numpy as np
import pytest

from infocus.constants import PhysicalConstants
from infocus.geometry import RxPlacement, Scenario, build_array

# hand calculation speed of light
ROUND_C = PhysicalConstants.ROUND_LIGHT_SPEED

F_C = 3e11
BANDWIDTH = 4e10
HALF_WAVELENGTH = PhysicalConstants.LIGHT_SPEED / F_C / 2


@pytest.fixture
def small_array():
    """Array of a few hundred antennas (R = 5 mm)"""
    return build_array(5e-3, 5e-4)


@pytest.fixture(scope="session")
def fast_array():
    """Array used by fast runs (R = 2.5 cm, half-wavelength spacing)"""
    return build_array(0.025, HALF_WAVELENGTH)


@pytest.fixture(scope="session")
def coarse_full_array():
    """Full size aperture on a coarse lattice, for design domain checks"""
    return build_array(0.1, 2e-3)


@pytest.fixture(scope="session")
def full_array():
    """Full size array (R = 10 cm, 0.5 mm spacing)"""
    return build_array(0.1, 5e-4)


def make_scenario(geometry, ell=0.15, gamma_deg=0.0, bandwidth=BANDWIDTH,
                  q_bits=2, n_sub=128, f_c=F_C):
    return Scenario(geometry=geometry,
                    rx=RxPlacement(ell, math.radians(gamma_deg)), f_c=f_c,
                    bandwidth=bandwidth, q_bits=q_bits, n_sub=n_sub)


def index_map(geometry):
    """Maps integer lattice coordinates to antenna indices"""

    ii = (geometry.x / geometry.spacing).round().astype(int)
    jj = (geometry.y / geometry.spacing).round().astype(int)

    return {(i, j): n for n, (i, j) in enumerate(zip(ii, jj))}


def circular_distance(a, b):
    """Elementwise circular distance between phase arrays"""

    diff = np.mod(np.asarray(a) - np.asarray(b), 2 * math.pi)

    return np.minimum(diff, 2 * math.pi - diff)
