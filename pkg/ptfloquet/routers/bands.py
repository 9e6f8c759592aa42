"""Spectra along v/v_T: static SSH, static PT-SSH and Floquet drives."""
import logging

import numpy as np
import pandas as pd

from ptfloquet.config import RunSettings
from ptfloquet.core import analysis
from ptfloquet.models.model import DriveSpec, SweepResult
from ptfloquet.routers.common import IPR_METADATA, add_common_flags, add_degeneracy_flag, guard_defective
from ptfloquet.routers.output import write_frame

log = logging.getLogger(__name__)

DEFAULT_V_AXIS = "0:1:101"


def sweep_rows(sweep: SweepResult, energy_names: tuple[str, str]) -> list[dict]:
    re_name, im_name = energy_names
    rows = []
    for v, spectrum in zip(sweep.axis.values, sweep.spectra):
        if spectrum is None:
            continue
        for n, entry in enumerate(spectrum):
            rows.append({
                "v_over_vt": v,
                "eig_index": n,
                re_name: float(entry.energy.real),
                im_name: float(entry.energy.imag),
                "ipr": entry.ipr,
            })
    return rows


def ssh_bands(settings: RunSettings) -> int:
    axis = settings.axis("v_over_vt", DEFAULT_V_AXIS)
    sweep = analysis.band_sweep(
        axis, gamma=0.0, dimers=settings.dimers, degeneracy_tol=settings.degeneracy_tol, workers=settings.workers
    )
    frame = pd.DataFrame(sweep_rows(sweep, ("re_E", "im_E")), columns=["v_over_vt", "eig_index", "re_E", "im_E", "ipr"])
    write_frame(frame, "ssh-bands", settings, [IPR_METADATA])
    guard_defective(sweep.statuses, settings)
    return 0


def static_pt(settings: RunSettings) -> int:
    v_axis = settings.axis("v_over_vt", DEFAULT_V_AXIS)
    gammas = settings.axis("gamma_over_vt", "0.25")
    rows, statuses = [], []
    for gamma in gammas.values:
        sweep = analysis.band_sweep(
            v_axis, gamma=gamma, dimers=settings.dimers, degeneracy_tol=settings.degeneracy_tol, workers=settings.workers
        )
        rows.extend({"gamma_over_vt": gamma, **row} for row in sweep_rows(sweep, ("re_E", "im_E")))
        statuses.extend(sweep.statuses)
    frame = pd.DataFrame(rows, columns=["v_over_vt", "gamma_over_vt", "eig_index", "re_E", "im_E", "ipr"])
    write_frame(frame, "static-pt", settings, [IPR_METADATA])
    guard_defective(statuses, settings)
    return 0


def floquet_spectrum(settings: RunSettings) -> int:
    axis = settings.axis("v_over_vt", DEFAULT_V_AXIS)
    gamma = settings.scalar("gamma_over_vt", 0.2)
    drive = DriveSpec(kind=settings.drive, omega=settings.scalar("omega_over_vt", 0.7))
    sweep = analysis.band_sweep(
        axis,
        gamma=gamma,
        dimers=settings.dimers,
        drive=drive,
        degeneracy_tol=settings.degeneracy_tol,
        workers=settings.workers,
    )
    rows = []
    for v, spectrum, status in zip(axis.values, sweep.spectra, sweep.statuses):
        if spectrum is None:
            rows.append({"v_over_vt": v, "eig_index": -1, "re_eps": np.nan, "im_eps": np.nan, "ipr": np.nan,
                         "status": status.value})
            continue
        for n, entry in enumerate(spectrum):
            rows.append({
                "v_over_vt": v,
                "eig_index": n,
                "re_eps": float(entry.energy.real),
                "im_eps": float(entry.energy.imag),
                "ipr": entry.ipr,
                "status": status.value,
            })
    frame = pd.DataFrame(rows, columns=["v_over_vt", "eig_index", "re_eps", "im_eps", "ipr", "status"])
    extra = [
        ("drive", drive.kind.value),
        ("omega_over_vt", repr(drive.omega)),
        ("gamma_over_vt", repr(gamma)),
        IPR_METADATA,
    ]
    write_frame(frame, "floquet-spectrum", settings, extra)
    guard_defective(sweep.statuses, settings)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("ssh-bands", help="static SSH bands against v/v_T")
    add_common_flags(parser)
    add_degeneracy_flag(parser)
    parser.set_defaults(handler=ssh_bands)

    parser = subparsers.add_parser("static-pt", help="complex spectrum of the PT-SSH chain against v/v_T")
    add_common_flags(parser)
    add_degeneracy_flag(parser)
    parser.set_defaults(handler=static_pt)

    parser = subparsers.add_parser("floquet-spectrum", help="quasienergy spectrum of a driven chain against v/v_T")
    add_common_flags(parser)
    add_degeneracy_flag(parser)
    parser.set_defaults(handler=floquet_spectrum)
