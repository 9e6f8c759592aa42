import logging
import warnings

import numpy as np
import pandas as pd

from ptfloquet.config import RunSettings
from ptfloquet.core import analysis, lattice
from ptfloquet.core.errors import EmptySelection
from ptfloquet.models.model import DriveKind, DriveSpec, LatticeConfig, SiteIndex, Spectrum
from ptfloquet.routers.common import IPR_METADATA, add_common_flags, add_degeneracy_flag
from ptfloquet.routers.output import write_frame

log = logging.getLogger(__name__)

COLUMNS = ["state", "eig_index", "re_E", "im_E", "ipr", "site_index", "cell", "sublattice", "abs_psi"]


def spectrum_for(settings: RunSettings, config: LatticeConfig) -> Spectrum:
    ''' Static PT-SSH spectrum, or the Floquet spectrum when a frequency is given '''
    if settings.omega_over_vt is None:
        return analysis.static_spectrum(lattice.build_pt_ssh(config), settings.degeneracy_tol)
    if settings.drive is DriveKind.TWO_SITE:
        raise ValueError("edge states need a lattice drive")
    drive = DriveSpec(kind=settings.drive, omega=settings.scalar("omega_over_vt", 0.7))
    h1, h2 = lattice.drive_hamiltonians(drive, config)
    return analysis.floquet_spectrum(h1, h2, drive.omega, degeneracy_tol=settings.degeneracy_tol)


def profile_rows(label: str, index: int, spectrum: Spectrum) -> list[dict]:
    state = spectrum.states[:, index]
    energy = complex(spectrum.energies[index])
    rows = []
    for flat, amplitude in enumerate(np.abs(state)):
        site = SiteIndex.from_flat(flat)
        rows.append({
            "state": label,
            "eig_index": index,
            "re_E": energy.real,
            "im_E": energy.imag,
            "ipr": float(spectrum.iprs[index]),
            "site_index": flat + 1,
            "cell": site.cell,
            "sublattice": site.sublattice.value,
            "abs_psi": float(amplitude),
        })
    return rows


def edge_states(settings: RunSettings) -> int:
    config = LatticeConfig.from_ratio(
        settings.scalar("v_over_vt", 0.2), settings.scalar("gamma_over_vt", 0.0), settings.dimers
    )
    spectrum = spectrum_for(settings, config)
    selected = analysis.edge_states(spectrum, settings.energy_tol, settings.ipr_min)
    if not selected:
        log.warning("no state passes the edge filters (energy_tol=%r, ipr_min=%r)", settings.energy_tol, settings.ipr_min)
        warnings.warn("no edge state selected", EmptySelection, stacklevel=2)

    rows = []
    for n, state in enumerate(selected):
        rows.extend(profile_rows(f"edge-{n}", state.index, spectrum))
    chosen = {state.index for state in selected}
    bulk = [n for n in range(len(spectrum)) if n not in chosen]
    if bulk:
        best = max(bulk, key=lambda n: spectrum.iprs[n])
        rows.extend(profile_rows("max-ipr", best, spectrum))

    frame = pd.DataFrame(rows, columns=COLUMNS)
    extra = [("edge_states", str(len(selected))), IPR_METADATA]
    if spectrum.omega is not None:
        extra.append(("drive", settings.drive.value))
    write_frame(frame, "edge-states", settings, extra)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("edge-states", help="site profiles of the edge states and the most localized bulk state")
    add_common_flags(parser)
    parser.add_argument("--energy-tol", dest="energy_tol", type=float, help="largest |E| of an edge state")
    parser.add_argument("--ipr-min", dest="ipr_min", type=float, help="smallest IPR of an edge state")
    add_degeneracy_flag(parser)
    parser.set_defaults(handler=edge_states)
