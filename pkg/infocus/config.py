"""Configuration parser and defaults"""

import os.path
import math
import logging
import abc
from configparser import ConfigParser, Error as ParserError
from dataclasses import dataclass, replace
from importlib import resources
from typing import NamedTuple, Optional, Tuple

import appdirs
import numpy as np

from .constants import BeamType, SweepVariable
from .geometry import RxPlacement, Scenario, build_array, \
    half_wavelength_spacing

# logger
logger = logging.getLogger("infocus.config")

# section holding the flat run document
SECTION = "run"

# spacing keyword selecting lambda_c / 2
HALF_WAVELENGTH = "half-wavelength"

# aperture radius used by fast runs (m)
FAST_RADIUS = 0.025

# smallest chirp grid accepted
MIN_CHIRP_POINTS = 16


class Diagnostic(NamedTuple):
    """Problem found in a run configuration"""

    line: Optional[int]
    key: Optional[str]
    message: str

    def __str__(self):
        location = "line {0}: ".format(self.line) if self.line else ""
        subject = "{0}: ".format(self.key) if self.key else ""

        return location + subject + self.message


class ConfigError(ValueError):
    """Raised when an invalid configuration is requested"""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)

        super(ConfigError, self).__init__(
            "; ".join(str(diagnostic) for diagnostic in self.diagnostics))


class BaseConfig(ConfigParser, metaclass=abc.ABCMeta):
    """Base config parser"""

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("delimiters", ("=",))
        kwargs.setdefault("inline_comment_prefixes", ("#",))
        kwargs.setdefault("interpolation", None)
        # duplicates are reported by RunConfigParser.read_document
        kwargs.setdefault("strict", False)

        super(BaseConfig, self).__init__(*args, **kwargs)

        # keep key case: R and r are different keys
        self.optionxform = str

        # scenario
        self[SECTION] = {
            'R': '0.1',
            'delta': HALF_WAVELENGTH,
            'f_c': '3e11',
            'B': '4e10',
            'ell': '0.15',
            'gamma': '0',
            'q': '2',
            'quantize': 'true',
            'n_sub': '512',
            'eta': '1e-3',
            'T': '290'
        }


class RunConfigParser(BaseConfig):
    """Run document parser"""

    DEFAULT_CONFIG_FILENAME = 'infocus.conf.dist'

    # optional keys and their defaults
    BENCH_DEFAULTS = {
        'beams': 'standard, infocus',
        'thin_delta': '0.36',
        'chirp_points': '4096',
        'response_points': '401',
        'sweep': 'none',
        'sweep_start': '',
        'sweep_stop': '',
        'sweep_steps': '',
        'sweep_values': '',
        'fast': 'false',
        'threads': '1'
    }

    def __init__(self, *args, **kwargs):
        super(RunConfigParser, self).__init__(*args, **kwargs)

        for key, value in self.BENCH_DEFAULTS.items():
            self[SECTION][key] = value

        # keys understood by the bench, in provenance order
        self.known_keys = tuple(self[SECTION].keys())

        # line numbers of keys read from a document
        self.key_lines = {}

        # problems found while reading
        self.diagnostics = []

    def read_document(self, document):
        """Reads a flat key-value document

        Syntax errors are stored as diagnostics rather than raised.

        :param document: document text
        :type document: str
        """

        for number, line in enumerate(document.splitlines(), start=1):
            stripped = line.strip()

            if not stripped or stripped.startswith("#"):
                continue

            if stripped.startswith("["):
                self.diagnostics.append(Diagnostic(
                    number, None, "sections are not supported"))
                continue

            if "=" in stripped:
                key = stripped.split("=", 1)[0].strip()

                if key in self.key_lines:
                    self.diagnostics.append(Diagnostic(
                        number, key, "duplicate key"))
                else:
                    self.key_lines[key] = number

        # drop section headers reported above
        body = "\n".join("# " + line if line.strip().startswith("[")
                         else line for line in document.splitlines())

        try:
            self.read_string("[{0}]\n{1}".format(SECTION, body))
        except ParserError as e:
            self.diagnostics.extend(self._parser_diagnostics(e))

        for key in self[SECTION]:
            if key not in self.known_keys:
                self.diagnostics.append(Diagnostic(
                    self.key_lines.get(key), key, "unknown key"))

    @staticmethod
    def _parser_diagnostics(error):
        """Turns a configparser error into diagnostics"""

        # the prefixed section header shifts line numbers by one
        if hasattr(error, "errors"):
            return [Diagnostic(number - 1, None,
                               "cannot parse '{0}'".format(line.strip("'")))
                    for number, line in error.errors]

        number = getattr(error, "lineno", None)

        return [Diagnostic(number - 1 if number else None, None,
                           error.message)]

    def line_of(self, key):
        return self.key_lines.get(key)

    @classmethod
    def get_config_filepath(cls):
        """Find the path to the config file

        This creates the config file if it does not exist, using the distributed
        template.
        """

        config_dir = appdirs.user_config_dir("infocus")
        config_file = os.path.join(config_dir, "infocus.conf")

        # check the config file exists
        if not os.path.isfile(config_file):
            cls.create_user_config_file(config_file)

        return config_file

    @classmethod
    def create_user_config_file(cls, config_file):
        """Create config file in user directory"""

        directory = os.path.dirname(config_file)

        # create user config directory
        if not os.path.exists(directory):
            os.makedirs(directory)

        logger.debug("Creating config file at %s", directory)

        # copy across distribution template
        template = resources.files(__package__).joinpath(
            cls.DEFAULT_CONFIG_FILENAME)

        with open(config_file, 'wb') as user_file:
            user_file.write(template.read_bytes())


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run configuration"""

    radius: float
    spacing: float
    f_c: float
    bandwidth: float
    ell: float
    gamma_deg: float
    q_bits: int
    quantize: bool
    n_sub: int
    eta: float
    temperature: float
    beams: Tuple[str, ...]
    thin_delta: float
    chirp_points: int
    response_points: int
    sweep: Optional[str]
    sweep_values: Tuple[float, ...]
    fast: bool
    threads: int
    spacing_is_half_wavelength: bool = False

    def build_geometry(self):
        """Builds the transmit array"""
        return build_array(self.radius, self.spacing)

    def scenario(self, geometry=None):
        """Scenario described by this configuration

        :param geometry: prebuilt array for this configuration's R and spacing
        :rtype: :class:`~infocus.geometry.Scenario`
        """

        if geometry is None:
            geometry = self.build_geometry()

        return Scenario(geometry=geometry,
                        rx=RxPlacement.from_degrees(self.ell, self.gamma_deg),
                        f_c=self.f_c, bandwidth=self.bandwidth,
                        q_bits=self.q_bits, n_sub=self.n_sub,
                        tx_power=self.eta, temperature=self.temperature)

    def at_point(self, value):
        """Configuration with the swept quantity set to value"""

        if self.sweep == SweepVariable.DISTANCE:
            return replace(self, ell=float(value))
        elif self.sweep == SweepVariable.ANGLE:
            return replace(self, gamma_deg=float(value))
        elif self.sweep == SweepVariable.BANDWIDTH:
            return replace(self, bandwidth=float(value))
        elif self.sweep == SweepVariable.RESOLUTION:
            return replace(self, q_bits=int(value))
        elif self.sweep == SweepVariable.THINNING:
            return replace(self, thin_delta=float(value))

        raise ValueError("Configuration has no sweep")

    def provenance(self):
        """Resolved values as key-value pairs, in a fixed order"""

        spacing = (HALF_WAVELENGTH + " ({0!r})".format(self.spacing)
                   if self.spacing_is_half_wavelength else repr(self.spacing))

        return [
            ("R", repr(self.radius)),
            ("delta", spacing),
            ("f_c", repr(self.f_c)),
            ("B", repr(self.bandwidth)),
            ("ell", repr(self.ell)),
            ("gamma", repr(self.gamma_deg)),
            ("q", str(self.q_bits)),
            ("quantize", str(self.quantize).lower()),
            ("n_sub", str(self.n_sub)),
            ("eta", repr(self.eta)),
            ("T", repr(self.temperature)),
            ("beams", ", ".join(self.beams)),
            ("thin_delta", repr(self.thin_delta)),
            ("chirp_points", str(self.chirp_points)),
            ("response_points", str(self.response_points)),
            ("sweep", self.sweep or "none"),
            ("sweep_values", ", ".join(repr(value)
                                       for value in self.sweep_values)),
            ("fast", str(self.fast).lower())
        ]


class _Resolver:
    """Converts raw values of a parsed document, collecting diagnostics"""

    def __init__(self, parser):
        self.parser = parser
        self.section = parser[SECTION]
        self.diagnostics = []

    def report(self, key, message):
        self.diagnostics.append(Diagnostic(self.parser.line_of(key), key,
                                           message))

    def raw(self, key):
        return self.section.get(key, "").strip()

    def number(self, key, kind=float, check=None, requirement=None):
        """Parses a numeric key, returning None after reporting a problem"""

        raw = self.raw(key)

        try:
            value = kind(raw) if kind is float else int(raw)
        except ValueError:
            self.report(key, "'{0}' is not a valid {1}".format(
                raw, "number" if kind is float else "integer"))
            return None

        if kind is float and not math.isfinite(value):
            self.report(key, "must be finite")
            return None

        if check is not None and not check(value):
            self.report(key, requirement)
            return None

        return value

    def boolean(self, key):
        raw = self.raw(key).lower()

        if raw not in self.parser.BOOLEAN_STATES:
            self.report(key, "'{0}' is not a boolean".format(raw))
            return None

        return self.parser.BOOLEAN_STATES[raw]

    def number_list(self, key):
        values = []

        for item in self.raw(key).split(","):
            item = item.strip()

            if not item:
                continue

            try:
                values.append(float(item))
            except ValueError:
                self.report(key, "'{0}' is not a valid number".format(item))
                return None

        return values


def _sweep_checks(f_c, n_sub):
    """Validity checks for swept values, with their requirement text"""

    def bandwidth_ok(value):
        if f_c is not None and not value < 2 * f_c:
            return False

        return value > 0 or (value == 0 and n_sub == 1)

    return {
        SweepVariable.DISTANCE: (lambda value: value > 0,
                                 "distances must be positive"),
        SweepVariable.ANGLE: (lambda value: abs(value) < 90,
                              "angles must lie strictly between -90 and 90 "
                              "degrees"),
        SweepVariable.BANDWIDTH: (bandwidth_ok,
                                  "bandwidths must be positive and below "
                                  "twice the carrier frequency"),
        SweepVariable.RESOLUTION: (lambda value: value >= 1
                                   and float(value).is_integer(),
                                   "resolutions must be integers of at least "
                                   "1 bit"),
        SweepVariable.THINNING: (lambda value: 0 < value <= 1,
                                 "thinning fractions must lie in (0, 1]")
    }


def _resolve_sweep(resolver, variable, f_c, n_sub):
    """Sweep values from an explicit list or a start/stop/steps grid"""

    explicit = resolver.number_list("sweep_values")

    if explicit is None:
        return None

    if explicit:
        values = explicit
    else:
        start, stop, steps = SweepVariable.defaults[variable]

        if resolver.raw("sweep_start"):
            start = resolver.number("sweep_start")

        if resolver.raw("sweep_stop"):
            stop = resolver.number("sweep_stop")

        if resolver.raw("sweep_steps"):
            steps = resolver.number("sweep_steps", kind=int,
                                    check=lambda value: value >= 1,
                                    requirement="must be at least 1")

        if start is None or stop is None or steps is None:
            return None

        values = list(np.linspace(start, stop, int(steps)))

    if SweepVariable.is_integer(variable):
        values = [float(round(value)) if abs(value - round(value)) < 1e-9
                  else value for value in values]

    check, requirement = _sweep_checks(f_c, n_sub)[variable]
    bad = [value for value in values if not check(value)]

    if bad:
        resolver.report("sweep_values" if explicit else "sweep",
                        "{0} (got {1!r})".format(requirement, bad[0]))
        return None

    return tuple(float(value) for value in values)


def validate_config(document, overrides=None):
    """Validates a run document

    :param document: flat key-value document text
    :type document: str
    :param overrides: raw values replacing those in the document
    :type overrides: Dict[str, str]
    :return: the resolved configuration and an empty list, or None and the
        problems found
    :rtype: Tuple[Optional[:class:`RunConfig`], List[:class:`Diagnostic`]]
    """

    parser = RunConfigParser()
    parser.read_document(document)

    for key, value in (overrides or {}).items():
        parser[SECTION][key] = str(value)

    resolver = _Resolver(parser)
    resolver.diagnostics.extend(parser.diagnostics)

    positive = (lambda value: value > 0, "must be positive")
    at_least_one = (lambda value: value >= 1, "must be at least 1")

    fast = resolver.boolean("fast")
    radius = resolver.number("R", check=positive[0], requirement=positive[1])

    if fast:
        radius = FAST_RADIUS

    f_c = resolver.number("f_c", check=positive[0], requirement=positive[1])
    bandwidth = resolver.number("B", check=lambda value: value >= 0,
                                requirement="cannot be negative")

    if bandwidth is not None and f_c is not None and not bandwidth < 2 * f_c:
        resolver.report("B", "must be smaller than twice the carrier "
                        "frequency")
        bandwidth = None

    spacing_is_half_wavelength = resolver.raw("delta").lower() in (
        HALF_WAVELENGTH, "")

    if spacing_is_half_wavelength:
        spacing = half_wavelength_spacing(f_c) if f_c is not None else None
    else:
        spacing = resolver.number("delta", check=positive[0],
                                  requirement=positive[1])

    ell = resolver.number("ell", check=positive[0], requirement=positive[1])
    gamma = resolver.number("gamma", check=lambda value: abs(value) < 90,
                            requirement="must lie strictly between -90 and 90 "
                                        "degrees")
    q_bits = resolver.number("q", kind=int, check=at_least_one[0],
                             requirement=at_least_one[1])
    quantize = resolver.boolean("quantize")
    n_sub = resolver.number("n_sub", kind=int, check=at_least_one[0],
                            requirement=at_least_one[1])
    eta = resolver.number("eta", check=positive[0], requirement=positive[1])
    temperature = resolver.number("T", check=positive[0],
                                  requirement=positive[1])

    if bandwidth == 0 and n_sub is not None and n_sub > 1:
        resolver.report("n_sub", "zero bandwidth allows a single sub-band")

    beams = tuple(item.strip() for item in resolver.raw("beams").split(",")
                  if item.strip())

    if not beams:
        resolver.report("beams", "at least one beam is required")
    else:
        for beam in beams:
            if not BeamType.is_valid(beam):
                resolver.report("beams", "unknown beam '{0}', expected one "
                                "of {1}".format(beam, ", ".join(
                                    BeamType.get_beam_types())))

        if len(set(beams)) != len(beams):
            resolver.report("beams", "beams are listed more than once")

    thin_delta = resolver.number("thin_delta",
                                 check=lambda value: 0 < value <= 1,
                                 requirement="must lie in (0, 1]")
    chirp_points = resolver.number(
        "chirp_points", kind=int,
        check=lambda value: value >= MIN_CHIRP_POINTS,
        requirement="must be at least {0}".format(MIN_CHIRP_POINTS))
    response_points = resolver.number("response_points", kind=int,
                                      check=lambda value: value >= 2,
                                      requirement="must be at least 2")
    threads = resolver.number("threads", kind=int, check=at_least_one[0],
                              requirement=at_least_one[1])

    sweep = resolver.raw("sweep")
    sweep_values = ()

    if sweep.lower() in ("", "none"):
        sweep = None
    elif not SweepVariable.is_valid(sweep):
        resolver.report("sweep", "unknown sweep variable '{0}', expected one "
                        "of {1}".format(sweep, ", ".join(
                            SweepVariable.defaults)))
    else:
        sweep_values = _resolve_sweep(resolver, sweep, f_c, n_sub)

    if resolver.diagnostics:
        return None, resolver.diagnostics

    config = RunConfig(radius=radius, spacing=spacing, f_c=f_c,
                       bandwidth=bandwidth, ell=ell, gamma_deg=gamma,
                       q_bits=q_bits, quantize=quantize, n_sub=n_sub, eta=eta,
                       temperature=temperature, beams=beams,
                       thin_delta=thin_delta, chirp_points=chirp_points,
                       response_points=response_points, sweep=sweep,
                       sweep_values=sweep_values, fast=fast, threads=threads,
                       spacing_is_half_wavelength=spacing_is_half_wavelength)

    logger.debug("Resolved configuration %s", config)

    return config, []


def load_run_config(path=None, overrides=None):
    """Reads and validates a run document

    :param path: document path, the user config file if None
    :param overrides: raw values replacing those in the document
    :rtype: :class:`RunConfig`
    :raises ConfigError: if the document is invalid
    :raises OSError: if the document cannot be read
    """

    if path is None:
        path = RunConfigParser.get_config_filepath()

    with open(path) as obj:
        logger.debug("Reading config from %s", path)
        document = obj.read()

    config, diagnostics = validate_config(document, overrides=overrides)

    if diagnostics:
        raise ConfigError(diagnostics)

    return config
