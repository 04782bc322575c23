"""Command line interface"""

import sys
import logging
import argparse

from . import __version__
from .config import ConfigError, load_run_config
from .bench import run_design, run_sweep

# logger
logger = logging.getLogger("infocus.cli")

# exit codes
EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def build_parser():
    """Creates the argument parser"""

    parser = argparse.ArgumentParser(
        prog="infocus",
        description="Wideband near-field beamforming bench")
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)

    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="run document (default: user config file)")
    common.add_argument("--beams", metavar="LIST",
                        help="comma separated beams, overriding the config")
    common.add_argument("--fast", action="store_true",
                        help="use a 2.5 cm aperture")
    common.add_argument("--threads", type=int, metavar="N",
                        help="worker threads")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="more output, repeat for debug messages")
    common.add_argument("-q", "--quiet", action="store_true",
                        help="only report errors")

    for name, text in (("design", "design beams for a single scenario"),
                       ("sweep", "sweep one scenario quantity")):
        command = subparsers.add_parser(name, parents=[common], help=text)
        command.add_argument("--out", metavar="DIR", default=".",
                             help="output directory (default: current)")

    subparsers.add_parser("validate", parents=[common],
                          help="check a run document")

    return parser


def _log_level(args):
    if args.quiet:
        return logging.ERROR

    return {0: logging.WARNING, 1: logging.INFO}.get(args.verbose,
                                                     logging.DEBUG)


def _overrides(args):
    """Raw config values set on the command line"""

    overrides = {}

    if args.beams is not None:
        overrides["beams"] = args.beams

    if args.fast:
        overrides["fast"] = "true"

    if args.threads is not None:
        overrides["threads"] = str(args.threads)

    return overrides


def main(argv=None):
    """Runs the command line interface

    :param argv: arguments, sys.argv[1:] if None
    :return: exit code
    :rtype: int
    """

    args = build_parser().parse_args(argv)

    logging.basicConfig(level=_log_level(args),
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        config = load_run_config(args.config, overrides=_overrides(args))
    except ConfigError as e:
        for diagnostic in e.diagnostics:
            print("config error: {0}".format(diagnostic), file=sys.stderr)

        return EXIT_CONFIG
    except OSError as e:
        print("cannot read config: {0}".format(e), file=sys.stderr)

        return EXIT_CONFIG

    if args.command == "validate":
        for key, value in config.provenance():
            print("{0} = {1}".format(key, value))

        return EXIT_OK

    try:
        if args.command == "design":
            run_design(config, args.out)
        else:
            run_sweep(config, args.out)
    except ConfigError as e:
        for diagnostic in e.diagnostics:
            print("config error: {0}".format(diagnostic), file=sys.stderr)

        return EXIT_CONFIG
    except Exception as e:
        logger.debug("Run failed", exc_info=True)
        print("error: {0}".format(e), file=sys.stderr)

        return EXIT_RUNTIME

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
