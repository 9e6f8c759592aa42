import json
import logging

from ptfloquet import __version__
from ptfloquet.config import RunSettings
from ptfloquet.core.errors import ValidationFailed
from ptfloquet.core.validation import FAMILIES, FamilyReport, run_validation
from ptfloquet.routers.common import add_common_flags
from ptfloquet.routers.output import clean_value, write_text

log = logging.getLogger(__name__)


def report_payload(reports: dict[str, FamilyReport], settings: RunSettings) -> dict:
    return {
        "tool": "ptfloquet",
        "version": __version__,
        "command": "validate",
        "config": settings.echo(),
        "passed": all(report.passed for report in reports.values()),
        "families": {
            name: {key: clean_value(value) for key, value in report.model_dump().items()}
            for name, report in reports.items()
        },
    }


def validate(settings: RunSettings) -> int:
    ''' Oracle suites; the report is JSON whatever --format says '''
    reports = run_validation(
        settings.family_list(),
        resolution=settings.resolution,
        samples=settings.samples,
        perturb=settings.perturb,
    )
    write_text(json.dumps(report_payload(reports, settings), indent=2) + "\n", settings)
    failed = [name for name, report in reports.items() if not report.passed]
    if failed:
        raise ValidationFailed(failed)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="compare closed forms against direct numerics")
    add_common_flags(parser)
    parser.add_argument("--family", dest="families", action="append", help=f"one of {', '.join(FAMILIES)}; repeatable")
    parser.add_argument("--resolution", type=int, help="points per axis of the monodromy grid")
    parser.add_argument("--samples", type=int, help="quasi-random draws per sampled family")
    parser.add_argument("--perturb", help="add a deliberate error to one family")
    parser.set_defaults(handler=validate)
