import logging

import pandas as pd

from ptfloquet.config import RunSettings, parse_grid
from ptfloquet.core import analysis
from ptfloquet.core.analysis import Plane
from ptfloquet.core.errors import ConfigError
from ptfloquet.models.model import CellStatus, DriveKind, GridAxis
from ptfloquet.routers.common import add_common_flags, guard_defective
from ptfloquet.routers.output import write_frame

log = logging.getLogger(__name__)

DEFAULT_OMEGA_AXIS = "0.3:4:201"
DEFAULT_GAMMA_AXIS = "0:1:201"
DEFAULT_V_AXIS = "0:1:201"


def _resample(axis: GridAxis, count: int) -> GridAxis:
    if len(axis) < 2:
        raise ConfigError(f"--grid needs a range for {axis.name}, got the single value {axis.values[0]!r}")
    return GridAxis.uniform(axis.name, axis.values[0], axis.values[-1], count)


def plane_axes(settings: RunSettings) -> tuple[GridAxis, GridAxis, float, float]:
    ''' x axis, y axis and the fixed (v, gamma) for the selected plane '''
    if settings.plane is Plane.OMEGA_GAMMA:
        x_axis = settings.axis("omega_over_vt", DEFAULT_OMEGA_AXIS)
        y_axis = settings.axis("gamma_over_vt", DEFAULT_GAMMA_AXIS)
        v, gamma = settings.scalar("v_over_vt", 0.2), 0.0
    else:
        x_axis = settings.axis("v_over_vt", DEFAULT_V_AXIS)
        y_axis = settings.axis("omega_over_vt", DEFAULT_OMEGA_AXIS)
        v, gamma = 0.0, settings.scalar("gamma_over_vt", 0.2)
    if settings.grid is not None:
        nx, ny = parse_grid(settings.grid)
        x_axis, y_axis = _resample(x_axis, nx), _resample(y_axis, ny)
    return x_axis, y_axis, v, gamma


def phase_diagram(settings: RunSettings) -> int:
    x_axis, y_axis, v, gamma = plane_axes(settings)
    if settings.bulk:
        grid = analysis.bulk_phase_diagram(
            settings.drive, settings.plane, x_axis, y_axis, v=v, gamma=gamma, j=settings.j_coupling
        )
    else:
        grid = analysis.phase_diagram(
            settings.drive,
            settings.plane,
            x_axis,
            y_axis,
            v=v,
            gamma=gamma,
            dimers=settings.dimers,
            j=settings.j_coupling,
            workers=settings.workers,
        )

    rows = [
        {"x": x, "y": y, "max_im": float(grid.values[iy, ix]), "flag": grid.flags[iy, ix]}
        for iy, y in enumerate(y_axis.values)
        for ix, x in enumerate(x_axis.values)
    ]
    frame = pd.DataFrame(rows, columns=["x", "y", "max_im", "flag"])
    fixed = ("v_over_vt", v) if settings.plane is Plane.OMEGA_GAMMA else ("gamma_over_vt", gamma)
    extra = [
        ("plane", settings.plane.value),
        ("drive", settings.drive.value),
        ("route", "bulk" if settings.bulk else "lattice"),
        ("x", x_axis.name),
        ("y", y_axis.name),
        (fixed[0], repr(fixed[1])),
    ]
    if settings.drive is DriveKind.TWO_SITE:
        extra.append(("j_coupling", repr(settings.j_coupling)))
    extra.extend(("resonance", f"omega={omega!r} n={2 * n + 1}") for n, omega in enumerate(grid.resonances))
    write_frame(frame, "phase-diagram", settings, extra)
    log.debug("%d EXCEPTIONAL cells", grid.count(CellStatus.EXCEPTIONAL))
    guard_defective([CellStatus(flag) for flag in grid.flags.ravel()], settings)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("phase-diagram", help="max|Im eps| over a parameter plane")
    add_common_flags(parser)
    parser.add_argument("--plane", choices=[plane.value for plane in Plane], help="parameter plane (default omega-gamma)")
    parser.add_argument("--j-coupling", dest="j_coupling", type=float, help="two-site coupling J")
    parser.add_argument("--bulk", action="store_true", default=None, help="analytic bulk route instead of the open chain")
    parser.set_defaults(handler=phase_diagram)
