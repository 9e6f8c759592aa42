class PTFloquetError(Exception):
    """Base class for every error raised by ptfloquet"""


class ConfigError(PTFloquetError, ValueError):
    """Invalid run configuration, reported as a usage error"""


class NonConvergence(PTFloquetError):
    def __init__(self, detail: str, dim: int | None = None):
        super().__init__(detail)
        self.dim = dim


class OverflowRisk(PTFloquetError):
    def __init__(self, norm: float, cap: float):
        super().__init__(f"matrix norm {norm:.3g} exceeds exponential safety cap {cap:.3g}")
        self.norm = norm
        self.cap = cap


class DefectiveMonodromy(PTFloquetError):
    """Eigenvector matrix is numerically singular (exceptional point)"""

    def __init__(self, condition: float, detail: str | None = None):
        super().__init__(detail or f"eigenvector matrix is numerically singular (cond={condition:.3g})")
        self.condition = condition


class DegenerateDirection(PTFloquetError):
    def __init__(self, k: float):
        super().__init__(f"rotation angle undefined at k={k!r}: r(k) = 0")
        self.k = k


class ResonanceSingularity(PTFloquetError):
    def __init__(self, curly_e: complex):
        super().__init__(f"sin(2Eτ) vanishes at quasienergy {curly_e!r}: H_F direction ill-defined")
        self.curly_e = curly_e


class NotNormalized(PTFloquetError, ValueError):
    def __init__(self, norm: float):
        super().__init__(f"state has 2-norm {norm!r}, expected 1")
        self.norm = norm


class NumericalFailure(PTFloquetError):
    """Too many grid cells could not be evaluated"""

    def __init__(self, defective: int, total: int):
        super().__init__(f"{defective} of {total} cells are DEFECTIVE")
        self.defective = defective
        self.total = total


class EmptySelection(UserWarning):
    """No state passed the edge-state filters"""


class ValidationFailed(PTFloquetError):
    def __init__(self, families: list[str]):
        super().__init__(f"validation failed for: {', '.join(families)}")
        self.families = families
