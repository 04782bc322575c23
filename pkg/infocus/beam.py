"""Beamformer classes compared by the bench"""

import abc
import logging

from . import __version__
from .constants import BeamType, PlacementClass
from .geometry import rx_projection_class
from .channel import standard_phase_profile, equivalent_channel
from .design import DEFAULT_GRID_POINTS, design_infocus_beam, quantize_profile
from .rate import subband_frequencies, achievable_rate, thin_array

# logger
logger = logging.getLogger("infocus.beam")


class Beam(metaclass=abc.ABCMeta):
    """Abstract beamformer for a scenario

    Subclasses provide the continuous phase profile; quantization, channel
    evaluation and rate computation are shared.
    """

    # beam name, as used on the command line and in output files
    name = None

    def __init__(self, scenario, quantize=True, threads=1):
        """Initialises the beam

        :param scenario: link description
        :type scenario: :class:`~infocus.geometry.Scenario`
        :param quantize: round phases to the scenario's q-bit alphabet
        :type quantize: bool
        :param threads: worker threads used for channel evaluation
        :type threads: int
        """

        logger.debug("Init infocus %s %s beam", __version__, self.name)

        self.scenario = scenario
        self.quantize = bool(quantize)
        self.threads = int(threads)

        # cached profile
        self._profile = None

    @classmethod
    def load_from_name(cls, name, scenario, thin_delta=0.36,
                       chirp_points=DEFAULT_GRID_POINTS, **kwargs):
        """Creates the beam class registered under the specified name

        :param name: beam name
        :type name: string
        :param scenario: link description
        :param thin_delta: fraction of antennas left on by the thinned beam
        :param chirp_points: chirp grid resolution of the InFocus beam
        :raises ValueError: if the name is not recognised
        """

        if name == BeamType.STANDARD:
            return StandardBeam(scenario, **kwargs)
        elif name == BeamType.INFOCUS:
            return InFocusBeam(scenario, chirp_points, **kwargs)
        elif name == BeamType.THINNED_STANDARD:
            return ThinnedStandardBeam(scenario, thin_delta, **kwargs)

        raise ValueError("Unrecognised beam type '{0}'".format(name))

    @property
    def geometry(self):
        """Array driven by this beam"""
        return self.scenario.geometry

    @property
    def placement(self):
        return rx_projection_class(self.geometry, self.scenario.rx)[0]

    @property
    def placement_name(self):
        return PlacementClass.get_name(self.placement)

    @property
    def dispersion_factor(self):
        """Dispersion factor of the chirp added by this beam"""
        return 0.0

    @abc.abstractmethod
    def design(self):
        """Designs the continuous phase profile

        :return: phase profile aligned with the full array
        :rtype: :class:`~infocus.channel.PhaseProfile`
        """

        return NotImplemented

    def profile(self):
        """Phase profile actually applied, quantized if requested"""

        if self._profile is None:
            profile = self.design()

            if self.quantize:
                profile = quantize_profile(profile, self.scenario.q_bits)

            self._profile = profile

        return self._profile

    def channel(self, freqs):
        """Equivalent channel at the specified frequencies

        :rtype: :class:`~infocus.channel.EquivalentChannel`
        """

        return equivalent_channel(self.geometry, self.scenario.rx,
                                  self.profile(), freqs, threads=self.threads,
                                  scenario=self.scenario)

    def subband_channel(self):
        """Equivalent channel on the scenario's sub-band grid"""

        return self.channel(subband_frequencies(self.scenario.f_c,
                                                self.scenario.bandwidth,
                                                self.scenario.n_sub))

    def rate(self, channel=None):
        """Achievable rate of this beam

        :param channel: sub-band channel, evaluated if not given
        :rtype: :class:`~infocus.rate.RateResult`
        """

        if channel is None:
            channel = self.subband_channel()

        return achievable_rate(channel, self.scenario)


class StandardBeam(Beam):
    """Beam matched to the carrier frequency"""

    name = BeamType.STANDARD

    def design(self):
        return standard_phase_profile(self.geometry, self.scenario.rx,
                                      self.scenario.f_c)


class InFocusBeam(Beam):
    """Standard beam plus a misfocus-compensating spatial chirp"""

    name = BeamType.INFOCUS

    def __init__(self, scenario, chirp_points=DEFAULT_GRID_POINTS, *args,
                 **kwargs):
        super(InFocusBeam, self).__init__(scenario, *args, **kwargs)

        self.chirp_points = int(chirp_points)

        # designed beam, available after design()
        self.designed = None

    def design(self):
        self.designed = design_infocus_beam(self.scenario,
                                            n_grid=self.chirp_points)

        return self.designed.profile

    @property
    def dispersion_factor(self):
        if self.designed is None:
            self.profile()

        return self.designed.dispersion_factor


class ThinnedStandardBeam(Beam):
    """Standard beam on a centre disc holding a fraction delta of the
    antennas"""

    name = BeamType.THINNED_STANDARD

    def __init__(self, scenario, thin_delta, *args, **kwargs):
        super(ThinnedStandardBeam, self).__init__(scenario, *args, **kwargs)

        self.thin_delta = float(thin_delta)
        self._geometry = thin_array(scenario.geometry, self.thin_delta)

    @property
    def geometry(self):
        return self._geometry

    def design(self):
        return standard_phase_profile(self.geometry, self.scenario.rx,
                                      self.scenario.f_c)
