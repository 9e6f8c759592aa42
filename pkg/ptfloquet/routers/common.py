import argparse
import logging
from pathlib import Path

from ptfloquet.config import RunSettings, get_settings, load_settings
from ptfloquet.core.errors import NumericalFailure
from ptfloquet.models.model import CellStatus, DriveKind

log = logging.getLogger(__name__)

# argparse bookkeeping that is not part of RunSettings
_NOT_SETTINGS = {"command", "handler", "config", "verbose"}

# IPRs are taken after near-degenerate eigenvectors are rotated apart
IPR_METADATA = ("ipr", "cluster-localized")


def add_common_flags(parser: argparse.ArgumentParser) -> None:
    ''' Flags shared by every subcommand; a flag left out defers to the config file '''
    defaults = get_settings()
    parser.add_argument("--dimers", type=int, help=f"number of unit cells M (default {defaults.dimers})")
    parser.add_argument("--v-over-vt", dest="v_over_vt", help="v/v_T as a value or min:max:count")
    parser.add_argument("--gamma-over-vt", dest="gamma_over_vt", help="gamma/v_T as a value or min:max:count")
    parser.add_argument("--omega-over-vt", dest="omega_over_vt", help="omega/v_T as a value or min:max:count")
    parser.add_argument("--drive", choices=[kind.value for kind in DriveKind], help="drive protocol")
    parser.add_argument("--grid", help="phase-diagram resolution NxM")
    parser.add_argument("--out", type=Path, help="output file (stdout when omitted)")
    parser.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    parser.add_argument("--config", type=Path, help="key=value file read before the flags")
    parser.add_argument("--workers", type=int, help="threads used to evaluate grid points")
    parser.add_argument("--defective-fraction", dest="defective_fraction", type=float,
                        help=f"largest tolerated share of DEFECTIVE cells (default {defaults.defective_fraction})")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")


def add_degeneracy_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--degeneracy-tol", dest="degeneracy_tol", type=float,
        help="eigenvalues closer than this are rotated together before the IPR is taken",
    )


def settings_from(args: argparse.Namespace) -> RunSettings:
    overrides = {key: value for key, value in vars(args).items() if key not in _NOT_SETTINGS}
    if isinstance(overrides.get("families"), list):
        overrides["families"] = ",".join(overrides["families"])
    return load_settings(args.config, **overrides)


def guard_defective(statuses: list[CellStatus], settings: RunSettings) -> None:
    ''' Raise NumericalFailure when DEFECTIVE cells exceed the tolerated fraction '''
    defective = sum(status is CellStatus.DEFECTIVE for status in statuses)
    if defective:
        log.warning("%d of %d points are DEFECTIVE", defective, len(statuses))
    if defective > settings.defective_fraction * len(statuses):
        raise NumericalFailure(defective, len(statuses))
