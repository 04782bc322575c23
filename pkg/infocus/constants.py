"""Physical constants and enumerated values"""


class PhysicalConstants:
    """Fixed physical constants used throughout the simulator"""

    # speed of light (m/s)
    LIGHT_SPEED = 2.9979e8

    # speed of light used by hand calculations (m/s)
    ROUND_LIGHT_SPEED = 3e8

    # Planck's constant (J s)
    PLANCK = 6.625e-34

    # Boltzmann's constant (J/K)
    BOLTZMANN = 1.3806e-23

    @classmethod
    def wavelength(cls, frequency, light_speed=None):
        """Free space wavelength at the specified frequency

        :param frequency: frequency in Hz
        :type frequency: float
        :param light_speed: speed of light override
        :type light_speed: float
        :return: wavelength in metres
        :rtype: float
        """

        if light_speed is None:
            light_speed = cls.LIGHT_SPEED

        return light_speed / frequency


# module level shortcuts
LIGHT_SPEED = PhysicalConstants.LIGHT_SPEED
PLANCK = PhysicalConstants.PLANCK
BOLTZMANN = PhysicalConstants.BOLTZMANN


class PlacementClass:
    """Receiver placement relative to the transmit aperture"""

    BORESIGHT = 0
    PROJECTION_OUTSIDE = 1
    PROJECTION_INSIDE = 2

    # angles smaller than this (rad) are treated as boresight
    BORESIGHT_TOLERANCE = 1e-9

    """Placement names"""
    names = {0: "boresight", 1: "projection-outside", 2: "projection-inside"}

    @classmethod
    def is_valid(cls, placement):
        """Validates placement constant

        :param placement: placement to validate
        :type placement: int
        :return: True if placement is valid, False otherwise
        :rtype: boolean
        """

        return placement in cls.names

    @classmethod
    def get_name(cls, placement):
        """Returns the name corresponding to the specified placement

        :param placement: placement constant
        :type placement: int
        :return: placement name
        :rtype: string
        """

        return cls.names[placement]


class BeamType:
    """Beam selectors understood by the bench"""

    STANDARD = "standard"
    INFOCUS = "infocus"
    THINNED_STANDARD = "thinned-standard"

    @classmethod
    def get_beam_types(cls):
        """Returns available beam types, in output order

        :return: collection of beam names
        :rtype: tuple<string>
        """

        return (cls.STANDARD, cls.INFOCUS, cls.THINNED_STANDARD)

    @classmethod
    def is_valid(cls, beam_type):
        """Validates beam type

        :param beam_type: beam name to validate
        :type beam_type: string
        :return: True if beam type is valid, False otherwise
        :rtype: boolean
        """

        return beam_type in cls.get_beam_types()


class SweepVariable:
    """Scenario quantities that can be swept"""

    DISTANCE = "ell"
    ANGLE = "gamma"
    BANDWIDTH = "B"
    RESOLUTION = "q"
    THINNING = "delta"

    """Default sweep grids (start, stop, steps) in configuration units"""
    defaults = {"ell": (0.05, 0.60, 12), "gamma": (-75.0, 75.0, 31),
                "B": (5e9, 40e9, 8), "q": (1, 6, 6), "delta": (0.1, 1.0, 10)}

    @classmethod
    def is_valid(cls, variable):
        """Validates sweep variable

        :param variable: variable name
        :type variable: string
        :return: True if the variable can be swept, False otherwise
        :rtype: boolean
        """

        return variable in cls.defaults

    @classmethod
    def is_integer(cls, variable):
        """Checks if the sweep variable only takes integer values

        :param variable: variable name
        :type variable: string
        :rtype: boolean
        """

        return variable == cls.RESOLUTION
