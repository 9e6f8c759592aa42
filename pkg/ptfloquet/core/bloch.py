"""Momentum-space blocks of the bulk PT-SSH model.

Each block H_PT(k) = (v + w cos k) σ_x + (w sin k) σ_y + iγ σ_z is rotated
about z by φ(k) into r(k) σ_x + iγ σ_z, whose propagator has a closed form.
With E² = r² - γ² real, cos(Et) and sin(Et)/E are real for every γ, so they
are evaluated through cos/cosh and sin/sinh without complex arithmetic.
"""
import cmath
import logging
import math

import numpy as np

from ptfloquet.core.errors import DegenerateDirection
from ptfloquet.core.lattice import IDENTITY, PAULI_X, PAULI_Y, PAULI_Z
from ptfloquet.core.linalg import ComplexMatrix
from ptfloquet.models.model import BlochBlock, BlochParams

log = logging.getLogger(__name__)

DEFAULT_K_POINTS = 201
# below this |E t| sin(Et)/E is summed as a series
SERIES_CUTOFF = 1e-4
DEGENERATE_TOL = 1e-14


def k_grid(count: int = DEFAULT_K_POINTS) -> np.ndarray:
    return np.linspace(-np.pi, np.pi, count, endpoint=False)


def cos_et(e2: float, t: float) -> float:
    """cos(E t) for real E² of either sign"""
    if e2 >= 0:
        return math.cos(math.sqrt(e2) * t)
    return math.cosh(math.sqrt(-e2) * t)


def sinc_et(e2: float, t: float) -> float:
    """sin(E t)/E for real E², with the E → 0 limit t"""
    if abs(e2) * t * t < SERIES_CUTOFF**2:
        u = e2 * t * t
        return t * (1.0 - u / 6.0 + u * u / 120.0)
    if e2 > 0:
        e = math.sqrt(e2)
        return math.sin(e * t) / e
    kappa = math.sqrt(-e2)
    return math.sinh(kappa * t) / kappa


def principal_energy(r: float, gamma: float) -> complex:
    """E = √(r² - γ²): real ≥ 0 when r ≥ |γ|, positive imaginary otherwise"""
    return cmath.sqrt(complex(r * r - gamma * gamma, 0.0))


def h_pt_k(p: BlochParams) -> ComplexMatrix:
    return (p.v + p.w * math.cos(p.k)) * PAULI_X + (p.w * math.sin(p.k)) * PAULI_Y + 1j * p.gamma * PAULI_Z


def r_of_k(p: BlochParams) -> float:
    r = math.hypot(p.v + p.w * math.cos(p.k), p.w * math.sin(p.k))
    return min(max(r, abs(p.v - p.w)), p.v + p.w)


def rotation(phi: float) -> ComplexMatrix:
    """e^{+iσ_z φ/2}"""
    return np.diag([cmath.exp(0.5j * phi), cmath.exp(-0.5j * phi)])


def rotate_block(p: BlochParams, strict: bool = False) -> tuple[BlochBlock, ComplexMatrix]:
    """Frame rotation taking H_PT(k) to r σ_x + iγ σ_z.

    When r(k) = 0 the angle is undefined: φ = 0 is used and the block is
    marked degenerate, or DegenerateDirection is raised if strict.
    """
    a = p.v + p.w * math.cos(p.k)
    b = p.w * math.sin(p.k)
    r = r_of_k(p)
    degenerate = abs(a) < DEGENERATE_TOL and abs(b) < DEGENERATE_TOL
    if degenerate:
        if strict:
            raise DegenerateDirection(p.k)
        log.debug("r(k) = 0 at k=%r, using phi = 0", p.k)
        phi = 0.0
    else:
        phi = math.atan2(b, a)
    block = BlochBlock(r=r, phi=phi, energy=principal_energy(r, p.gamma), degenerate=degenerate)
    return block, r * PAULI_X + 1j * p.gamma * PAULI_Z


def rotated_propagator(r: float, gamma: float, t: float) -> ComplexMatrix:
    """e^{-i(r σ_x + iγ σ_z) t} in closed form"""
    e2 = r * r - gamma * gamma
    return cos_et(e2, t) * IDENTITY - 1j * sinc_et(e2, t) * (r * PAULI_X + 1j * gamma * PAULI_Z)


def propagator_k(p: BlochParams, t: float) -> ComplexMatrix:
    """Propagator of the k-th rotated block"""
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    return rotated_propagator(r_of_k(p), p.gamma, t)


def bulk_bands(v: float, w: float, gamma: float, ks: np.ndarray | None = None) -> np.ndarray:
    """Static bulk energies ±E(k), shape (len(ks), 2)"""
    ks = k_grid() if ks is None else np.asarray(ks, dtype=float)
    bands = np.empty((len(ks), 2), dtype=np.complex128)
    for n, k in enumerate(ks):
        e = principal_energy(r_of_k(BlochParams(v=v, w=w, gamma=gamma, k=float(k))), gamma)
        bands[n] = (-e, e)
    return bands
