import argparse
import logging
import sys

from ptfloquet import __version__
from ptfloquet.core.errors import NumericalFailure, PTFloquetError, ValidationFailed
from ptfloquet.routers import bands, phases, states, validate
from ptfloquet.routers.common import settings_from

log = logging.getLogger("ptfloquet")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptfloquet", description="Static and Floquet-driven PT-symmetric SSH lattices"
    )
    parser.add_argument("--version", action="version", version=f"ptfloquet {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    bands.register(subparsers)
    phases.register(subparsers)
    states.register(subparsers)
    validate.register(subparsers)
    return parser


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        # argparse exits 0 for --help/--version and 2 for bad usage
        return EXIT_OK if not exit_.code else EXIT_USAGE
    configure_logging(args.verbose)

    try:
        settings = settings_from(args)
        log.debug("running %s", args.command)
        return args.handler(settings)
    except (NumericalFailure, ValidationFailed) as error:
        log.error("%s", error)
        return EXIT_NUMERICAL
    except ValueError as error:
        log.error("invalid configuration: %s", error)
        return EXIT_USAGE
    except PTFloquetError as error:
        log.error("numerical failure: %s", error)
        return EXIT_NUMERICAL
    except OSError as error:
        log.error("i/o error: %s", error)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
