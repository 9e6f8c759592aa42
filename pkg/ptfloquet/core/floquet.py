"""Two-step Floquet drive: monodromy, effective Hamiltonian and its symmetries.

Real-space spectra go through the numerical route (monodromy of the full
open chain, then its principal logarithm) because open boundaries break k
conservation. The closed forms below describe a single rotated bulk block
r σ_x ± iγ σ_z, driven with +γ on [0, τ) and -γ on [τ, 2τ):

    G(T) = (1 - 2x²) I - 2i r s (cos Eτ σ_x - i γ s σ_y),   s = sin(Eτ)/E

with x = r s real. Its eigenphases solve cos(2Eτ) = 1 - 2x².
"""
import cmath
import logging
import math

import numpy as np

from ptfloquet.core.bloch import cos_et, r_of_k, sinc_et
from ptfloquet.core.errors import DefectiveMonodromy, ResonanceSingularity
from ptfloquet.core.lattice import IDENTITY, PAULI_X, PAULI_Y, PAULI_Z
from ptfloquet.core.linalg import (
    ComplexMatrix,
    eig_dense,
    expm,
    fold_quasienergy,
    log_eigenvalues,
    spectral_order,
)
from ptfloquet.models.model import (
    BlochParams,
    EigenDecomposition,
    FloquetAnalytic,
    ShiftedFloquet,
    SymmetryFlags,
)

log = logging.getLogger(__name__)

# |x| this close to 1 is an exceptional point
EXCEPTIONAL_TOL = 1e-10
RESONANCE_TOL = 1e-12
SYMMETRY_TOL = 1e-10


def monodromy(h1, h2, period: float, reverse: bool = False) -> ComplexMatrix:
    """One-period propagator e^{-i H2 T/2} e^{-i H1 T/2}; H1 acts first unless reverse"""
    if period <= 0:
        raise ValueError(f"period must be positive, got {period!r}")
    h1 = np.asarray(h1, dtype=np.complex128)
    h2 = np.asarray(h2, dtype=np.complex128)
    if h1.shape != h2.shape:
        raise ValueError(f"step Hamiltonians differ in shape: {h1.shape} vs {h2.shape}")
    first = expm(-0.5j * period * h1)
    second = expm(-0.5j * period * h2)
    return first @ second if reverse else second @ first


def quasienergies(g, period: float) -> tuple[np.ndarray, EigenDecomposition]:
    """Folded quasienergies of a monodromy with its right eigenvectors, sorted by (Re, Im)"""
    decomposition = eig_dense(g)
    quasi = log_eigenvalues(decomposition.eigenvalues, period)
    order = spectral_order(quasi)
    decomposition = EigenDecomposition(
        eigenvalues=decomposition.eigenvalues[order],
        right_eigenvectors=decomposition.right_eigenvectors[:, order],
        condition=decomposition.condition,
        condition_flag=decomposition.condition_flag,
    )
    return quasi[order], decomposition


def folding_variable(r: float, gamma: float, omega: float) -> float:
    """x = (r/E) sin(Eτ), real for every parameter choice"""
    tau = math.pi / omega
    return r * sinc_et(r * r - gamma * gamma, tau)


def quasienergy_analytic(r: float, gamma: float, omega: float) -> tuple[complex, float]:
    """Representative quasienergy (Re in [0, ω/2], Im ≥ 0) and the folding variable x"""
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r!r}")
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    tau = math.pi / omega
    x = folding_variable(r, gamma, omega)
    rhs = 1.0 - 2.0 * x * x
    assert rhs <= 1.0 + 1e-12, "cos(2Eτ) above one"
    if abs(x) <= 1.0:
        return complex(math.acos(max(rhs, -1.0)) / (2 * tau), 0.0), x
    eta = math.acosh(2.0 * x * x - 1.0) / (2 * tau)
    return complex(omega / 2, eta), x


def _unit_scale(curly_e: complex, x: float, tau: float) -> complex:
    """2x / sin(2Eτ), the factor turning the σ part of G(T) into V σ_z V⁻¹"""
    sine = cmath.sin(2 * curly_e * tau)
    if abs(sine) < RESONANCE_TOL:
        if abs(x) > math.sqrt(RESONANCE_TOL):
            raise ResonanceSingularity(curly_e)
        # x → 0 limit
        return complex(math.copysign(1.0, x) / math.sqrt(1.0 - x * x))
    return 2 * x / sine


def hf_analytic(r: float, gamma: float, omega: float) -> FloquetAnalytic:
    """Closed-form H_F = c (cos Eτ σ_x - i γ (sin Eτ/E) σ_y), eigenvalues ±E"""
    curly_e, x = quasienergy_analytic(r, gamma, omega)
    tau = math.pi / omega
    e2 = r * r - gamma * gamma
    s = sinc_et(e2, tau)
    direction = np.array([cos_et(e2, tau), -1j * gamma * s, 0.0], dtype=np.complex128)
    c = curly_e * _unit_scale(curly_e, x, tau)
    hf_vector = c * direction
    matrix = hf_vector[0] * PAULI_X + hf_vector[1] * PAULI_Y + hf_vector[2] * PAULI_Z
    exceptional = abs(abs(x) - 1.0) <= EXCEPTIONAL_TOL
    if exceptional:
        log.warning("exceptional point at r=%r gamma=%r omega=%r (x=%r)", r, gamma, omega, x)
    return FloquetAnalytic(
        curly_e=curly_e,
        eta=curly_e.imag,
        x=x,
        c=complex(c),
        hf_vector=hf_vector,
        matrix=matrix,
        exceptional=exceptional,
    )


def hf_shifted(r: float, gamma: float, omega: float) -> ShiftedFloquet:
    """H_{F,s} = V [E_s σ_z + (ω/2) I] V⁻¹ with E_s = E - ω/2.

    V σ_z V⁻¹ = H_F / E does not depend on how the columns of V are scaled
    or ordered, so it is taken from the closed form directly.
    """
    analytic = hf_analytic(r, gamma, omega)
    if analytic.exceptional:
        raise DefectiveMonodromy(math.inf, f"eigenvectors of H_F coalesce at x={analytic.x!r}")
    tau = math.pi / omega
    e2 = r * r - gamma * gamma
    unit = _unit_scale(analytic.curly_e, analytic.x, tau) * (
        cos_et(e2, tau) * PAULI_X - 1j * gamma * sinc_et(e2, tau) * PAULI_Y
    )
    curly_e_s = analytic.curly_e - omega / 2
    return ShiftedFloquet(curly_e_s=curly_e_s, matrix=curly_e_s * unit + (omega / 2) * IDENTITY)


def _close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    return float(np.max(np.abs(a - b))) <= tol


def classify_symmetries(h, tol: float = SYMMETRY_TOL) -> SymmetryFlags:
    """Sublattice, pseudo-Hermitian (η = σ_x) and chiral symmetry of a 2×2 matrix"""
    h = np.asarray(h, dtype=np.complex128)
    if h.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {h.shape}")
    scaled = tol * max(1.0, float(np.max(np.abs(h))))
    dagger = h.conj().T
    return SymmetryFlags(
        sublattice=_close(PAULI_Z @ h @ PAULI_Z, -h, scaled),
        pseudo_hermitian=_close(PAULI_X @ h @ PAULI_X, dagger, scaled),
        chiral=_close(PAULI_Y @ h @ PAULI_Y, -dagger, scaled),
    )


def monodromy_k_analytic(p: BlochParams, omega: float) -> ComplexMatrix:
    """Closed-form monodromy of the k-th rotated block, +γ step first"""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    tau = math.pi / omega
    r = r_of_k(p)
    e2 = r * r - p.gamma * p.gamma
    s = sinc_et(e2, tau)
    cos_e = cos_et(e2, tau)
    scalar = cos_e * cos_e - s * s * (r * r + p.gamma * p.gamma)
    return scalar * IDENTITY - 2j * r * s * (cos_e * PAULI_X - 1j * p.gamma * s * PAULI_Y)


def bulk_quasienergy_bands(
    v: float, w: float, gamma: float, omega: float, ks: np.ndarray
) -> np.ndarray:
    """Analytic Floquet bands ±E(k) folded into [-ω/2, ω/2), shape (len(ks), 2)"""
    bands = np.empty((len(ks), 2), dtype=np.complex128)
    for n, k in enumerate(ks):
        curly_e, _ = quasienergy_analytic(r_of_k(BlochParams(v=v, w=w, gamma=gamma, k=float(k))), gamma, omega)
        bands[n] = fold_quasienergy([-curly_e, curly_e], omega)
    return bands
