"""Compiled inner loops for the beamformed channel

The kernels release the GIL so that worker threads can evaluate disjoint
frequency chunks concurrently. Every frequency is reduced sequentially over
the antennas in storage order, which keeps results bit-identical regardless
of how the frequency grid is split.
"""

import numba
import numpy as np


@numba.njit(cache=True, nogil=True, error_model="numpy")
def beamformed_sums(phases, dists, freqs, light_speed):
    """Accumulates sum_n exp(j(phi_n - 2 pi f d_n / c)) / d_n per frequency

    :param phases: per-antenna phase shift (rad)
    :type phases: :class:`numpy.ndarray`
    :param dists: per-antenna distance to the receiver (m)
    :type dists: :class:`numpy.ndarray`
    :param freqs: frequencies (Hz)
    :type freqs: :class:`numpy.ndarray`
    :param light_speed: speed of light (m/s)
    :type light_speed: float
    :return: one unnormalised sum per frequency
    :rtype: :class:`numpy.ndarray`
    """

    n_freqs = freqs.size
    n_antennas = dists.size
    out = np.empty(n_freqs, dtype=np.complex128)

    for k in range(n_freqs):
        wavenumber = 2.0 * np.pi * freqs[k] / light_speed
        re = 0.0
        im = 0.0

        for n in range(n_antennas):
            arg = phases[n] - wavenumber * dists[n]
            inv = 1.0 / dists[n]
            re += np.cos(arg) * inv
            im += np.sin(arg) * inv

        out[k] = complex(re, im)

    return out
