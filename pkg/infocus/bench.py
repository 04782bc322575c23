"""Design and sweep runs exporting data files"""

import os
import logging

import numpy as np

from . import __version__
from .beam import Beam
from .config import ConfigError, Diagnostic
from .data import SweepRecord, SweepStore, format_number, write_csv
from .rate import in_band_gain_stats
from .workers import run_points

# logger
logger = logging.getLogger("infocus.bench")

# variable name of records that do not belong to a sweep
NO_SWEEP = "none"

# response grid half-span when the bandwidth is zero, relative to f_c
_ZERO_BAND_SPAN = 0.05


def _header(config):
    return [("infocus", __version__)] + config.provenance()


def _prepare_directory(out_dir):
    """Creates the output directory if needed"""

    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)


def response_frequencies(config):
    """Dense frequency grid of the response curve

    Covers the band and half of it again on either side, clamped to stay
    above zero; an odd number of points puts f_c on the grid.

    :rtype: :class:`numpy.ndarray`
    """

    half_span = 0.75 * config.bandwidth

    if half_span == 0:
        half_span = _ZERO_BAND_SPAN * config.f_c

    half_span = min(half_span, 0.5 * config.f_c)

    return np.linspace(config.f_c - half_span, config.f_c + half_span,
                       config.response_points)


def make_beams(config, scenario, threads=None):
    """Beams selected by the configuration, in configuration order"""

    if threads is None:
        threads = config.threads

    return [Beam.load_from_name(name, scenario, thin_delta=config.thin_delta,
                                chirp_points=config.chirp_points,
                                quantize=config.quantize, threads=threads)
            for name in config.beams]


def evaluate_beams(beams, variable=NO_SWEEP, value=0.0):
    """Rates and in-band gain statistics of built beams

    :param beams: beams sharing one scenario
    :type beams: List[:class:`~infocus.beam.Beam`]
    :param variable: swept quantity recorded with the results
    :param value: swept value recorded with the results
    :return: one record per beam
    :rtype: List[:class:`~infocus.data.SweepRecord`]
    """

    records = []

    for beam in beams:
        channel = beam.subband_channel()
        result = beam.rate(channel)
        stats = in_band_gain_stats(channel)

        records.append(SweepRecord(
            variable=variable, value=value, beam=beam.name,
            rate_bps=result.rate_bps, gain_min_db=stats.minimum,
            gain_max_db=stats.maximum, gain_mean_db=stats.mean,
            n_tx=beam.geometry.n_tx, n_active=beam.geometry.n_active,
            placement=beam.placement_name,
            dispersion_factor=beam.dispersion_factor))

        logger.info("%s = %s, %s beam: %.4e bit/s", variable, value, beam.name,
                    result.rate_bps)

    return records


def evaluate_point(config, geometry, variable=NO_SWEEP, value=0.0,
                   threads=None):
    """Builds and evaluates every selected beam at one scenario

    :param config: resolved configuration of the point
    :param geometry: transmit array
    :rtype: List[:class:`~infocus.data.SweepRecord`]
    """

    beams = make_beams(config, config.scenario(geometry), threads=threads)

    return evaluate_beams(beams, variable=variable, value=value)


def run_design(config, out_dir):
    """Designs and evaluates the selected beams for a single scenario

    Writes profile_<beam>.csv with the per-antenna phases, response.csv with
    the gain of every beam on a dense frequency grid and summary.csv with the
    rate records.

    :param config: resolved configuration
    :type config: :class:`~infocus.config.RunConfig`
    :param out_dir: output directory
    :return: store holding the summary records
    :rtype: :class:`~infocus.data.SweepStore`
    :raises OSError: if the output cannot be written
    """

    _prepare_directory(out_dir)

    header = _header(config)
    geometry = config.build_geometry()
    scenario = config.scenario(geometry)
    beams = make_beams(config, scenario)
    freqs = response_frequencies(config)

    response_rows = []

    for beam in beams:
        profile = beam.profile()

        write_csv(os.path.join(out_dir, "profile_{0}.csv".format(beam.name)),
                  ("x_m", "y_m", "phase_rad", "active"),
                  [[format_number(x), format_number(y), format_number(phase),
                    str(int(on))] for (x, y), phase, on in
                   zip(beam.geometry.coords, profile.phases,
                       beam.geometry.active)],
                  header=header)

        gain_db = beam.channel(freqs).gain_db()
        response_rows.extend([format_number(f), format_number(gain), beam.name]
                             for f, gain in zip(freqs, gain_db))

    write_csv(os.path.join(out_dir, "response.csv"),
              ("f_Hz", "gain_db", "beam_name"), response_rows, header=header)

    store = SweepStore(NO_SWEEP, config.beams)
    store.insert(0, evaluate_beams(beams))
    store.write(os.path.join(out_dir, "summary.csv"), header=header)

    return store


def run_sweep(config, out_dir):
    """Evaluates the selected beams at every sweep point

    Points are spread over worker threads; records are gathered in sweep order
    and written to sweep.csv by this thread alone.

    :param config: resolved configuration with a sweep
    :type config: :class:`~infocus.config.RunConfig`
    :param out_dir: output directory
    :rtype: :class:`~infocus.data.SweepStore`
    :raises ConfigError: if the configuration has no sweep
    """

    if config.sweep is None:
        raise ConfigError([Diagnostic(None, "sweep",
                                      "a sweep variable is required")])

    _prepare_directory(out_dir)

    # R and the spacing are never swept
    geometry = config.build_geometry()

    # points run in parallel, so each channel evaluation stays on one thread
    inner_threads = 1

    def evaluate(value):
        return evaluate_point(config.at_point(value), geometry,
                              variable=config.sweep, value=value,
                              threads=inner_threads)

    logger.info("Sweeping %s over %i points", config.sweep,
                len(config.sweep_values))

    results = run_points(config.sweep_values, evaluate, threads=config.threads)

    store = SweepStore(config.sweep, config.beams)

    for index, records in enumerate(results):
        store.insert(index, records)

    store.write(os.path.join(out_dir, "sweep.csv"), header=_header(config))

    return store
