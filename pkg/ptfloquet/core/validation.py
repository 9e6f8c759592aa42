"""Oracle suites comparing closed forms against direct numerics.

Sample points come from an unscrambled Halton sequence or from uniform
grids, so every run visits the same parameters.
"""
import cmath
import logging
import math
from typing import Callable

import numpy as np
from pydantic import BaseModel
from scipy.stats import qmc

from ptfloquet.core import bloch, floquet
from ptfloquet.core.lattice import PAULI_X
from ptfloquet.core.linalg import expm, fold_quasienergy
from ptfloquet.models.model import BlochParams

log = logging.getLogger(__name__)

# points this close to an exceptional point are skipped by eigenvalue
# comparisons, where square-root sensitivity swamps double precision
NEAR_EXCEPTIONAL = 1e-6
PERTURBATION = 1e-3


class FamilyReport(BaseModel):
    passed: bool
    max_deviation: float
    tolerance: float
    samples: int
    skipped: int = 0


def _halton(count: int, bounds: list[tuple[float, float]]) -> np.ndarray:
    sampler = qmc.Halton(d=len(bounds), scramble=False)
    # the first Halton point is the origin; skip it
    points = sampler.random(count + 1)[1:]
    lower = [b[0] for b in bounds]
    upper = [b[1] for b in bounds]
    return qmc.scale(points, lower, upper)


def quasienergy_deviation(curly_e: complex, numeric: np.ndarray, multipliers: np.ndarray, omega: float) -> float:
    """Distance of numerical quasienergies from the pair ±E, modulo ω.

    Each distance is weighted by |μ|/max|μ|: a multiplier much smaller than
    the largest one carries only absolute precision eps·‖G‖, so its
    logarithm is not held to the same tolerance.
    """
    weights = np.abs(multipliers) / np.max(np.abs(multipliers))
    pair = np.array([curly_e, -curly_e])
    distance = np.abs(fold_quasienergy(numeric[:, None] - pair[None, :], omega)).min(axis=1)
    return float(np.max(weights * distance))


def check_monodromy(resolution: int = 50, v: float = 0.25) -> tuple[float, int, int]:
    """Closed-form quasienergies and monodromies against the numerical route.

    Grid over k in [-π, π), γ in [0, 1], ω in [0.3, 5].
    """
    ks = bloch.k_grid(resolution)
    gammas = np.linspace(0.0, 1.0, resolution)
    omegas = np.linspace(0.3, 5.0, resolution)
    worst, samples, skipped = 0.0, 0, 0
    for k in ks:
        for gamma in gammas:
            plus = BlochParams(v=v, w=1.0 - v, gamma=float(gamma), k=float(k))
            minus = BlochParams(v=v, w=1.0 - v, gamma=-float(gamma), k=float(k))
            h_plus, h_minus = bloch.h_pt_k(plus), bloch.h_pt_k(minus)
            r = bloch.r_of_k(plus)
            for omega in omegas:
                samples += 1
                tau = math.pi / omega
                closed = floquet.monodromy_k_analytic(plus, float(omega))
                product = bloch.propagator_k(minus, tau) @ bloch.propagator_k(plus, tau)
                scale = max(1.0, float(np.max(np.abs(product))))
                worst = max(worst, float(np.max(np.abs(closed - product))) / scale)

                curly_e, x = floquet.quasienergy_analytic(r, float(gamma), float(omega))
                if abs(abs(x) - 1.0) < NEAR_EXCEPTIONAL:
                    skipped += 1
                    continue
                period = 2 * tau
                numeric, decomposition = floquet.quasienergies(floquet.monodromy(h_plus, h_minus, period), period)
                deviation = quasienergy_deviation(curly_e, numeric, decomposition.eigenvalues, float(omega))
                worst = max(worst, deviation)
    return worst, samples, skipped


def check_symmetry(samples: int = 10_000) -> tuple[float, int, int]:
    """Symmetry dichotomy of the closed-form H_F and pseudo-Hermiticity of H_{F,s}.

    Returns the largest pseudo-Hermiticity residual; any misclassified draw
    is reported as an infinite deviation.
    """
    points = _halton(samples, [(0.0, 1.0), (0.0, 1.0), (0.3, 5.0)])
    worst, skipped = 0.0, 0
    for r, gamma, omega in points:
        analytic = floquet.hf_analytic(float(r), float(gamma), float(omega))
        if analytic.exceptional:
            skipped += 1
            continue
        flags = floquet.classify_symmetries(analytic.matrix)
        real = analytic.curly_e.imag == 0.0
        expected = (True, True, True) if real else (True, False, False)
        if (flags.sublattice, flags.pseudo_hermitian, flags.chiral) != expected:
            log.warning("symmetry mismatch at r=%r gamma=%r omega=%r: %s", r, gamma, omega, flags)
            return math.inf, samples, skipped
        shifted = floquet.hf_shifted(float(r), float(gamma), float(omega)).matrix
        residual = float(np.max(np.abs(PAULI_X @ shifted @ PAULI_X - shifted.conj().T)))
        worst = max(worst, residual / max(1.0, float(np.max(np.abs(shifted)))))
    return worst, samples, skipped


def check_reality(samples: int = 10_000) -> tuple[float, int, int]:
    """cos(Et), sin(Et)/E and x evaluated in complex arithmetic have no imaginary part"""
    points = _halton(samples, [(0.0, 1.0), (0.0, 1.0), (0.0, 1.5), (-math.pi, math.pi), (0.0, 10.0)])
    worst = 0.0
    for v, w, gamma, k, t in points:
        r = bloch.r_of_k(BlochParams(v=float(v), w=float(w), gamma=float(gamma), k=float(k)))
        energy = cmath.sqrt(complex(r * r - gamma * gamma, 0.0))
        if abs(energy * t) < bloch.SERIES_CUTOFF:
            continue
        cosine = cmath.cos(energy * t)
        sinc = cmath.sin(energy * t) / energy
        scale = max(1.0, abs(cosine), abs(sinc))
        worst = max(worst, abs(cosine.imag) / scale, abs(sinc.imag) / scale)
        e2 = r * r - gamma * gamma
        worst = max(worst, abs(cosine.real - bloch.cos_et(e2, t)) / scale, abs(sinc.real - bloch.sinc_et(e2, t)) / scale)
    return worst, samples, 0


def check_propagator(samples: int = 2_000) -> tuple[float, int, int]:
    """Closed-form block propagator against expm, including γ > r, and det = 1"""
    points = _halton(samples, [(0.0, 1.0), (0.0, 1.5), (-math.pi, math.pi), (0.0, 5.0)])
    worst = 0.0
    for v, gamma, k, t in points:
        p = BlochParams(v=float(v), w=1.0 - float(v), gamma=float(gamma), k=float(k))
        _, rotated = bloch.rotate_block(p)
        closed = bloch.propagator_k(p, float(t))
        reference = expm(-1j * float(t) * rotated)
        scale = max(1.0, float(np.max(np.abs(reference))))
        worst = max(worst, float(np.max(np.abs(closed - reference))) / scale)
        worst = max(worst, abs(np.linalg.det(closed) - 1.0) / scale**2)
    return worst, samples, 0


FAMILIES: dict[str, tuple[Callable[..., tuple[float, int, int]], float]] = {
    "monodromy": (check_monodromy, 1e-8),
    "symmetry": (check_symmetry, 1e-10),
    "reality": (check_reality, 1e-12),
    "propagator": (check_propagator, 1e-10),
}


def run_validation(
    families: list[str] | None = None,
    resolution: int = 50,
    samples: int = 10_000,
    perturb: str | None = None,
) -> dict[str, FamilyReport]:
    """Run the selected oracle families; perturb adds a deliberate error to one family"""
    selected = list(FAMILIES) if families is None else families
    if not selected:
        raise ValueError("no validation family selected")
    unknown = [name for name in selected if name not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown validation families: {', '.join(unknown)}")
    if perturb is not None and perturb not in FAMILIES:
        raise ValueError(f"unknown validation family to perturb: {perturb}")

    reports = {}
    for name in selected:
        check, tolerance = FAMILIES[name]
        if name == "monodromy":
            deviation, count, skipped = check(resolution)
        elif name == "propagator":
            deviation, count, skipped = check(max(1, samples // 5))
        else:
            deviation, count, skipped = check(samples)
        if name == perturb:
            deviation += PERTURBATION
        passed = deviation <= tolerance
        if not passed:
            log.warning("validation family %s failed: deviation %.3g > %.3g", name, deviation, tolerance)
        reports[name] = FamilyReport(
            passed=passed, max_deviation=deviation, tolerance=tolerance, samples=count, skipped=skipped
        )
    return reports
