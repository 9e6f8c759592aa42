"""Real-space Hamiltonians of the open SSH chain and its PT-symmetric extensions.

Sites are ordered A, B, A, B, ... by ascending cell m, so the flat index of
(m, A) is 2(m-1) and of (m, B) is 2(m-1)+1.
"""
import logging

import numpy as np

from ptfloquet.core.linalg import ComplexMatrix
from ptfloquet.models.model import DriveKind, DriveSpec, LatticeConfig, SiteIndex, Sublattice

log = logging.getLogger(__name__)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY = np.eye(2, dtype=np.complex128)


def site_index(cell: int, sublattice: Sublattice | str) -> int:
    return SiteIndex(cell=cell, sublattice=Sublattice(sublattice)).flat


def site_label(index: int) -> str:
    site = SiteIndex.from_flat(index)
    return f"{site.cell}{site.sublattice.value}"


def sublattice_signs(sites: int) -> np.ndarray:
    """+1 on A sites, -1 on B sites"""
    return np.where(np.arange(sites) % 2 == 0, 1.0, -1.0)


def build_ssh(config: LatticeConfig, periodic: bool = False) -> ComplexMatrix:
    n = config.sites
    hopping = np.zeros(n - 1)
    hopping[0::2] = config.v
    hopping[1::2] = config.w
    h = np.diag(hopping, 1) + np.diag(hopping, -1)
    if periodic and config.dimers > 1:
        # closing bond (M, B) - (1, A)
        h[n - 1, 0] = h[0, n - 1] = config.w
    elif periodic:
        h[0, 1] = h[1, 0] = config.v + config.w
    return h.astype(np.complex128)


def build_pt_ssh(config: LatticeConfig, sign: int = 1, periodic: bool = False) -> ComplexMatrix:
    """SSH chain with +iγ on A and -iγ on B; sign=-1 gives the time-reversed copy"""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    h = build_ssh(config, periodic=periodic)
    h[np.diag_indices_from(h)] = sign * 1j * config.gamma * sublattice_signs(config.sites)
    return h


def build_two_site(j: float, gamma: float, sign: int = 1) -> ComplexMatrix:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return j * PAULI_X + sign * 1j * gamma * PAULI_Z


def drive_hamiltonians(
    drive: DriveSpec,
    config: LatticeConfig | None = None,
    j: float = 1.0,
    gamma: float | None = None,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """The two step Hamiltonians (H1 on [0, T/2), H2 on [T/2, T)) of a drive.

    PT_HERMITIAN uses the lattice γ on the first step and γ = 0 on the
    second. TWO_SITE needs no lattice; gamma defaults to config.gamma there.
    """
    if drive.kind is DriveKind.TWO_SITE:
        rate = gamma if gamma is not None else (config.gamma if config else 0.0)
        return build_two_site(j, rate, 1), build_two_site(j, rate, -1)
    if config is None:
        raise ValueError(f"{drive.kind.value} drive needs a lattice configuration")
    if drive.kind is DriveKind.PT_PT:
        return build_pt_ssh(config, 1), build_pt_ssh(config, -1)
    return build_pt_ssh(config, 1), build_ssh(config)
