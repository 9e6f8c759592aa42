"""Dense complex linear algebra for Hamiltonians and propagators.

Matrices here are small (a few hundred rows at most) and never symmetric in
general, so everything goes through LAPACK's general complex routines via
scipy: Hessenberg reduction followed by shifted QR for eigenproblems and
scaling-and-squaring Padé for the exponential.
"""
import logging

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from ptfloquet.core.errors import DefectiveMonodromy, NonConvergence, OverflowRisk
from ptfloquet.models.model import EigenDecomposition

log = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]

# Residual tolerance relative to ‖A‖_F
RESIDUAL_TOL = 1e-9
# Above this eigenvector condition number a decomposition counts as near-defective
CONDITION_LIMIT = 1e10
# 1-norm cap for expm; e^600 is still representable in double precision
EXPM_NORM_CAP = 600.0
# Eigenvalue parts are rounded to this many decimals for the sort key only
SORT_DECIMALS = 12


def as_complex_matrix(a) -> ComplexMatrix:
    """Validate a square finite matrix and return it as complex128"""
    matrix = np.asarray(a, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix has non-finite entries")
    return matrix


def spectral_order(values: NDArray[np.complex128]) -> NDArray[np.intp]:
    """Indices sorting eigenvalues by real part, then imaginary part"""
    re = np.round(values.real, SORT_DECIMALS) + 0.0
    im = np.round(values.imag, SORT_DECIMALS) + 0.0
    return np.lexsort((im, re))


def fix_gauge(vectors: ComplexMatrix) -> ComplexMatrix:
    """Scale each column to unit 2-norm with its largest entry real positive"""
    norms = np.linalg.norm(vectors, axis=0)
    vectors = vectors / norms
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivots) / pivots)


def eig_dense(a) -> EigenDecomposition:
    """Eigenvalues and unit right eigenvectors of a general complex matrix.

    Raises NonConvergence when LAPACK fails or the residual bound
    ‖A v - λ v‖ ≤ RESIDUAL_TOL ‖A‖_F is violated.
    """
    matrix = as_complex_matrix(a)
    dim = matrix.shape[0]
    try:
        values, vectors = scipy.linalg.eig(matrix, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as error:
        raise NonConvergence(f"QR iteration failed: {error}", dim=dim) from error

    order = spectral_order(values)
    values = values[order]
    vectors = fix_gauge(vectors[:, order])

    scale = max(np.linalg.norm(matrix, "fro"), np.finfo(float).tiny)
    residual = np.linalg.norm(matrix @ vectors - vectors * values, axis=0).max() / scale
    if residual > RESIDUAL_TOL:
        raise NonConvergence(f"eigenpair residual {residual:.3g} exceeds {RESIDUAL_TOL}", dim=dim)

    condition = float(np.linalg.cond(vectors)) if dim > 1 else 1.0
    if not np.isfinite(condition):
        condition = np.inf
    return EigenDecomposition(
        eigenvalues=values,
        right_eigenvectors=vectors,
        condition=condition,
        condition_flag=condition > CONDITION_LIMIT,
    )


def expm(a) -> ComplexMatrix:
    matrix = as_complex_matrix(a)
    norm = float(np.linalg.norm(matrix, 1))
    if norm > EXPM_NORM_CAP:
        raise OverflowRisk(norm, EXPM_NORM_CAP)
    return scipy.linalg.expm(matrix)


def fold_quasienergy(values, omega: float):
    """Fold real parts into [-ω/2, ω/2), leaving imaginary parts untouched"""
    values = np.asarray(values, dtype=np.complex128)
    re = np.mod(values.real + omega / 2, omega) - omega / 2
    # mod can round up to exactly ω/2
    re = np.where(re >= omega / 2, re - omega, re)
    return re + 1j * values.imag


def log_eigenvalues(multipliers, period: float):
    """Quasienergies i ln(μ)/T on the principal branch, folded"""
    multipliers = np.asarray(multipliers, dtype=np.complex128)
    if np.any(multipliers == 0):
        raise ValueError("monodromy is singular")
    return fold_quasienergy(1j * np.log(multipliers) / period, 2 * np.pi / period)


def floquet_log(g, period: float) -> ComplexMatrix:
    """Effective Hamiltonian H_F = (i/T) log G on the principal branch.

    The decomposition route is used so that each quasienergy lands in
    [-ω/2, ω/2). Near exceptional points the eigenvector matrix becomes
    singular and DefectiveMonodromy is raised; callers choose a fallback.
    """
    if period <= 0:
        raise ValueError(f"period must be positive, got {period!r}")
    decomposition = eig_dense(g)
    if decomposition.condition_flag:
        raise DefectiveMonodromy(decomposition.condition)
    vectors = decomposition.right_eigenvectors
    quasi = log_eigenvalues(decomposition.eigenvalues, period)
    # X V = V Λ  <=>  Vᵀ Xᵀ = (V Λ)ᵀ
    return scipy.linalg.solve(vectors.T, (vectors * quasi).T).T
