"""Spectral post-processing: IPR, PT-phase measures, sweeps and edge states."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Callable, Iterable, TypeVar

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse.csgraph import connected_components

from ptfloquet.core import lattice
from ptfloquet.core.bloch import k_grid, r_of_k
from ptfloquet.core.errors import NotNormalized, PTFloquetError
from ptfloquet.core.floquet import EXCEPTIONAL_TOL, monodromy, quasienergies, quasienergy_analytic
from ptfloquet.core.linalg import eig_dense, fix_gauge, fold_quasienergy
from ptfloquet.models.model import (
    BlochParams,
    CellStatus,
    DriveKind,
    DriveSpec,
    EdgeState,
    GridAxis,
    LatticeConfig,
    PhaseGrid,
    Spectrum,
    SweepResult,
)

log = logging.getLogger(__name__)

NORM_TOL = 1e-8
BROKEN_THRESHOLD = 1e-8
DEFAULT_ENERGY_TOL = 1e-3
DEFAULT_IPR_MIN = 0.2
EDGE_FRACTION = 0.1
DEFAULT_GRID = 201
# clusters whose eigenvectors are worse conditioned than this sit near an
# exceptional point and are left alone
CLUSTER_CONDITION_LIMIT = 10.0
# a cluster is rotated only if every rotated state keeps at least this share
# of its weight on one half of the chain
HALF_WEIGHT_MIN = 0.95

T = TypeVar("T")


class Plane(str, Enum):
    OMEGA_GAMMA = "omega-gamma"
    V_OMEGA = "v-omega"


def ipr(state) -> float:
    """Inverse participation ratio Σ|ψ_m|⁴ of a unit-norm state"""
    state = np.asarray(state, dtype=np.complex128)
    norm = float(np.linalg.norm(state))
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(norm)
    return float(np.sum(np.abs(state) ** 4))


def _energy_distance(a: np.ndarray, b: np.ndarray, omega: float | None) -> np.ndarray:
    diff = a[:, None] - b[None, :]
    if omega is not None:
        diff = fold_quasienergy(diff, omega)
    return np.abs(diff)


def match_spectra(a, b, omega: float | None = None) -> float:
    """Largest eigenvalue deviation under the best one-to-one pairing (modulo ω if given)"""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"spectra differ in size: {a.shape} vs {b.shape}")
    cost = _energy_distance(a, b, omega)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def localize_clusters(energies, vectors, tol: float, omega: float | None = None) -> np.ndarray:
    """Rotate near-degenerate eigenvectors towards the chain ends.

    Eigenvalues closer than tol form a cluster; inside the span of its
    eigenvectors the left-half projector is diagonalized, which separates a
    hybridized pair of edge modes into one state per edge. Clusters that do
    not split cleanly into left and right halves keep their eigenvectors.
    """
    energies = np.asarray(energies, dtype=np.complex128)
    vectors = np.array(vectors, dtype=np.complex128)
    if len(energies) < 2 or tol <= 0:
        return vectors
    adjacency = _energy_distance(energies, energies, omega) <= tol
    count, labels = connected_components(adjacency, directed=False)
    if count == len(energies):
        return vectors
    left = np.zeros(vectors.shape[0])
    left[: vectors.shape[0] // 2] = 1.0
    for label in range(count):
        members = np.flatnonzero(labels == label)
        if len(members) < 2:
            continue
        block = vectors[:, members]
        if np.linalg.cond(block) > CLUSTER_CONDITION_LIMIT:
            log.debug("skipping ill-conditioned cluster of %d states", len(members))
            continue
        q, _ = np.linalg.qr(block)
        weights, rotation = np.linalg.eigh(q.conj().T @ (left[:, None] * q))
        if np.any(np.maximum(weights, 1.0 - weights) < HALF_WEIGHT_MIN):
            continue
        vectors[:, members] = fix_gauge(q @ rotation)
    return vectors


def make_spectrum(energies, vectors, omega: float | None = None, degeneracy_tol: float = DEFAULT_ENERGY_TOL) -> Spectrum:
    vectors = localize_clusters(energies, vectors, degeneracy_tol, omega)
    iprs = np.array([ipr(vectors[:, n]) for n in range(vectors.shape[1])])
    return Spectrum(energies=np.asarray(energies, dtype=np.complex128), states=vectors, iprs=iprs, omega=omega)


def static_spectrum(h, degeneracy_tol: float = DEFAULT_ENERGY_TOL) -> Spectrum:
    decomposition = eig_dense(h)
    return make_spectrum(decomposition.eigenvalues, decomposition.right_eigenvectors, None, degeneracy_tol)


def floquet_spectrum(
    h1, h2, omega: float, reverse: bool = False, degeneracy_tol: float = DEFAULT_ENERGY_TOL
) -> Spectrum:
    """Quasienergies folded into [-ω/2, ω/2) with the monodromy's right eigenvectors"""
    period = 2 * math.pi / omega
    quasi, decomposition = quasienergies(monodromy(h1, h2, period, reverse=reverse), period)
    return make_spectrum(quasi, decomposition.right_eigenvectors, omega, degeneracy_tol)


def pt_broken_measure(spectrum: Spectrum) -> float:
    if len(spectrum) == 0:
        raise ValueError("empty spectrum")
    return float(np.max(np.abs(np.asarray(spectrum.energies).imag)))


def is_broken(measure: float, threshold: float = BROKEN_THRESHOLD) -> bool:
    return measure > threshold


def bulk_threshold(v: float, dimers: int = 20) -> float:
    """Smallest γ that breaks PT symmetry of the periodic chain: min r(k) over its allowed momenta"""
    ks = 2 * np.pi * np.arange(dimers) / dimers
    return min(r_of_k(BlochParams(v=v, w=1.0 - v, k=float(k))) for k in ks)


def resonance_frequencies(scale: float = 1.0, count: int = 3) -> tuple[float, ...]:
    """Drive frequencies 2·scale/n, n = 1, 3, 5, ..., where the PT threshold vanishes"""
    return tuple(2.0 * scale / n for n in range(1, 2 * count, 2))


def edge_weights(state) -> tuple[float, float]:
    """Weight Σ|ψ|² on the first and last 10% of sites"""
    density = np.abs(np.asarray(state)) ** 2
    width = max(1, int(round(EDGE_FRACTION * len(density))))
    return float(density[:width].sum()), float(density[-width:].sum())


def edge_states(
    spectrum: Spectrum, energy_tol: float = DEFAULT_ENERGY_TOL, ipr_min: float = DEFAULT_IPR_MIN
) -> list[EdgeState]:
    """Localized states at zero energy (zero quasienergy modulo ω for Floquet spectra)"""
    if energy_tol <= 0 or ipr_min <= 0:
        raise ValueError("thresholds must be positive")
    energies = np.asarray(spectrum.energies)
    if spectrum.omega is not None:
        offset = np.abs(fold_quasienergy(energies.real, spectrum.omega).real)
    else:
        offset = np.abs(energies)
    selected = []
    for n in np.flatnonzero((offset <= energy_tol) & (spectrum.iprs >= ipr_min)):
        state = spectrum.states[:, n]
        left_weight, right_weight = edge_weights(state)
        selected.append(
            EdgeState(
                index=int(n),
                energy=complex(energies[n]),
                state=state,
                ipr=float(spectrum.iprs[n]),
                left_weight=left_weight,
                right_weight=right_weight,
            )
        )
    return selected


def _evaluate(items: Iterable[T], fn: Callable[[T], object], workers: int) -> list:
    # results stay in input order whatever the completion order
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def check_v_axis(axis: GridAxis) -> None:
    if axis.values[0] < 0 or axis.values[-1] > 1:
        raise ValueError("v/v_T values must lie in [0, 1]")


def band_sweep(
    axis: GridAxis,
    gamma: float = 0.0,
    dimers: int = 20,
    drive: DriveSpec | None = None,
    degeneracy_tol: float = DEFAULT_ENERGY_TOL,
    workers: int = 1,
) -> SweepResult:
    """Static or Floquet spectra along v/v_T; failing points are flagged, not fatal"""
    check_v_axis(axis)
    if drive is not None and drive.kind is DriveKind.TWO_SITE:
        raise ValueError("band sweeps need a lattice drive")

    def point(v: float) -> tuple[Spectrum | None, CellStatus]:
        config = LatticeConfig.from_ratio(v, gamma, dimers)
        try:
            if drive is None:
                return static_spectrum(lattice.build_pt_ssh(config), degeneracy_tol), CellStatus.OK
            h1, h2 = lattice.drive_hamiltonians(drive, config)
            return floquet_spectrum(h1, h2, drive.omega, degeneracy_tol=degeneracy_tol), CellStatus.OK
        except PTFloquetError as error:
            log.warning("v/v_T=%r failed: %s", v, error)
            return None, CellStatus.DEFECTIVE

    results = _evaluate(axis.values, point, workers)
    return SweepResult(axis=axis, spectra=[s for s, _ in results], statuses=[f for _, f in results])


def phase_cell(
    kind: DriveKind, v: float, gamma: float, omega: float, dimers: int = 20, j: float = 1.0
) -> tuple[float, CellStatus]:
    """max|Im ε| of one drive configuration with its status"""
    drive = DriveSpec(kind=kind, omega=omega)
    try:
        if kind is DriveKind.TWO_SITE:
            h1, h2 = lattice.drive_hamiltonians(drive, j=j, gamma=gamma)
        else:
            h1, h2 = lattice.drive_hamiltonians(drive, LatticeConfig.from_ratio(v, gamma, dimers))
        quasi, decomposition = quasienergies(monodromy(h1, h2, drive.period), drive.period)
    except PTFloquetError as error:
        log.debug("cell (v=%r, gamma=%r, omega=%r) failed: %s", v, gamma, omega, error)
        if kind is DriveKind.TWO_SITE:
            return _two_site_analytic(j, gamma, omega)
        return 0.0, CellStatus.DEFECTIVE
    if kind is DriveKind.TWO_SITE:
        _, x = quasienergy_analytic(abs(j), gamma, omega)
        if decomposition.condition_flag or abs(abs(x) - 1.0) <= EXCEPTIONAL_TOL:
            return _two_site_analytic(j, gamma, omega)
    elif decomposition.condition_flag:
        return float(np.max(np.abs(quasi.imag))), CellStatus.DEFECTIVE
    return float(np.max(np.abs(quasi.imag))), CellStatus.OK


def _two_site_analytic(j: float, gamma: float, omega: float) -> tuple[float, CellStatus]:
    curly_e, x = quasienergy_analytic(abs(j), gamma, omega)
    if abs(abs(x) - 1.0) <= EXCEPTIONAL_TOL:
        return 0.0, CellStatus.EXCEPTIONAL
    return curly_e.imag, CellStatus.OK


def _plane_cells(plane: Plane, x_axis: GridAxis, y_axis: GridAxis, v: float, gamma: float):
    """(v, gamma, omega) for every cell in row-major (y, x) order"""
    for y in y_axis.values:
        for x in x_axis.values:
            if plane is Plane.OMEGA_GAMMA:
                yield v, y, x
            else:
                yield x, gamma, y


def phase_diagram(
    kind: DriveKind,
    plane: Plane,
    x_axis: GridAxis,
    y_axis: GridAxis,
    v: float = 0.2,
    gamma: float = 0.2,
    dimers: int = 20,
    j: float = 1.0,
    workers: int = 1,
) -> PhaseGrid:
    """PT phase over a parameter plane.

    omega-gamma: x = ω, y = γ at fixed v (fixed J for the two-site drive).
    v-omega: x = v/v_T, y = ω at fixed γ.
    """
    if kind is DriveKind.TWO_SITE and plane is not Plane.OMEGA_GAMMA:
        raise ValueError("the two-site drive has no coupling axis; use the omega-gamma plane")
    if plane is Plane.V_OMEGA:
        check_v_axis(x_axis)
    omegas = x_axis if plane is Plane.OMEGA_GAMMA else y_axis
    if omegas.values[0] <= 0:
        raise ValueError("driving frequencies must be positive")
    log.debug("phase diagram %s/%s on %dx%d cells", kind.value, plane.value, len(x_axis), len(y_axis))

    cells = list(_plane_cells(plane, x_axis, y_axis, v, gamma))
    results = _evaluate(cells, lambda cell: phase_cell(kind, *cell, dimers=dimers, j=j), workers)
    shape = (len(y_axis), len(x_axis))
    values = np.array([value for value, _ in results], dtype=float).reshape(shape)
    flags = np.array([status.value for _, status in results], dtype=object).reshape(shape)
    scale = abs(j) if kind is DriveKind.TWO_SITE else 1.0
    return PhaseGrid(x_axis=x_axis, y_axis=y_axis, values=values, flags=flags, resonances=resonance_frequencies(scale))


def bulk_phase_diagram(
    kind: DriveKind,
    plane: Plane,
    x_axis: GridAxis,
    y_axis: GridAxis,
    v: float = 0.2,
    gamma: float = 0.2,
    j: float = 1.0,
    k_points: int = DEFAULT_GRID,
) -> PhaseGrid:
    """Analytic bulk counterpart of phase_diagram: max over k of Im E(k).

    Only the symmetric drives have a closed form; the two-site drive is the
    single block r = J.
    """
    if kind is DriveKind.PT_HERMITIAN:
        raise ValueError("no closed form for the PT-Hermitian drive")
    if kind is DriveKind.TWO_SITE and plane is not Plane.OMEGA_GAMMA:
        raise ValueError("the two-site drive has no coupling axis; use the omega-gamma plane")
    ks = k_grid(k_points)
    values = np.zeros((len(y_axis), len(x_axis)))
    flags = np.full(values.shape, CellStatus.OK.value, dtype=object)
    for n, (cv, cg, co) in enumerate(_plane_cells(plane, x_axis, y_axis, v, gamma)):
        iy, ix = divmod(n, len(x_axis))
        if kind is DriveKind.TWO_SITE:
            rs = [abs(j)]
        else:
            rs = [r_of_k(BlochParams(v=cv, w=1.0 - cv, gamma=cg, k=float(k))) for k in ks]
        etas, exceptional = [], False
        for r in rs:
            curly_e, x = quasienergy_analytic(r, cg, co)
            etas.append(curly_e.imag)
            exceptional = exceptional or abs(abs(x) - 1.0) <= EXCEPTIONAL_TOL
        values[iy, ix] = max(etas)
        if exceptional:
            flags[iy, ix] = CellStatus.EXCEPTIONAL.value
    scale = abs(j) if kind is DriveKind.TWO_SITE else 1.0
    return PhaseGrid(x_axis=x_axis, y_axis=y_axis, values=values, flags=flags, resonances=resonance_frequencies(scale))
