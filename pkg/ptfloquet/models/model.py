import math
from enum import Enum
from typing import Iterator

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# v + w must equal v_T = 1 to this precision
UNIT_TOL = 1e-9


class ArrayModel(BaseModel):
    ''' Immutable container for numpy payloads '''
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class EigenDecomposition(ArrayModel):
    ''' Eigenvalues sorted by (Re, Im) with unit-norm right eigenvectors as columns '''
    eigenvalues: np.ndarray
    right_eigenvectors: np.ndarray
    condition: float = Field(description="2-norm condition number of the eigenvector matrix")
    condition_flag: bool = Field(description="True for near-defective decompositions")


class Sublattice(str, Enum):
    A = "A"
    B = "B"


class SiteIndex(BaseModel):
    ''' Site (m, A|B) of the chain; flat index 2(m-1) + (0 for A, 1 for B) '''
    model_config = ConfigDict(frozen=True)

    cell: int = Field(ge=1, description="Unit cell m, starting at 1")
    sublattice: Sublattice

    @property
    def flat(self) -> int:
        return 2 * (self.cell - 1) + (0 if self.sublattice is Sublattice.A else 1)

    @classmethod
    def from_flat(cls, index: int) -> "SiteIndex":
        if index < 0:
            raise ValueError(f"site index must be non-negative, got {index}")
        return cls(cell=index // 2 + 1, sublattice=Sublattice.A if index % 2 == 0 else Sublattice.B)


class LatticeConfig(BaseModel):
    ''' One static lattice: M dimers with couplings v, w and gain/loss γ, all in units of v_T '''
    model_config = ConfigDict(frozen=True)

    dimers: int = Field(default=20, ge=1, description="Number of unit cells M")
    v: float = Field(ge=0, description="Intra-dimer coupling")
    w: float = Field(ge=0, description="Inter-dimer coupling")
    gamma: float = Field(default=0.0, description="Gain/loss rate")

    @model_validator(mode="after")
    def check_normalization(self):
        if not all(math.isfinite(x) for x in (self.v, self.w, self.gamma)):
            raise ValueError("couplings must be finite")
        if abs(self.v + self.w - 1.0) > UNIT_TOL:
            raise ValueError(f"v + w must equal v_T = 1, got {self.v + self.w!r}")
        return self

    @classmethod
    def from_ratio(cls, v_over_vt: float, gamma_over_vt: float = 0.0, dimers: int = 20) -> "LatticeConfig":
        return cls(dimers=dimers, v=v_over_vt, w=1.0 - v_over_vt, gamma=gamma_over_vt)

    @property
    def sites(self) -> int:
        return 2 * self.dimers


class DriveKind(str, Enum):
    PT_PT = "pt-pt"
    PT_HERMITIAN = "pt-hermitian"
    TWO_SITE = "two-site"


class DriveSpec(BaseModel):
    ''' Two-step drive: first Hamiltonian on [0, T/2), second on [T/2, T) '''
    model_config = ConfigDict(frozen=True)

    kind: DriveKind
    omega: float = Field(gt=0, description="Driving frequency in units of v_T (or J for two-site)")

    @field_validator("omega")
    @classmethod
    def check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("omega must be finite")
        return value

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega

    @property
    def tau(self) -> float:
        return math.pi / self.omega


class BlochParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    v: float
    w: float
    gamma: float = 0.0
    k: float = 0.0

    @field_validator("k")
    @classmethod
    def wrap_k(cls, value: float) -> float:
        wrapped = (value + math.pi) % (2 * math.pi) - math.pi
        # rounding can land exactly on π
        return -math.pi if wrapped >= math.pi else wrapped


class BlochBlock(BaseModel):
    ''' Rotated-frame data of one momentum block: r σ_x + iγ σ_z '''
    model_config = ConfigDict(frozen=True)

    r: float = Field(ge=0)
    phi: float
    energy: complex = Field(description="Principal root of r² - γ²")
    degenerate: bool = Field(default=False, description="r = 0, rotation angle set to 0 by convention")


class FloquetAnalytic(ArrayModel):
    ''' Closed-form effective Hamiltonian of one two-step block '''
    curly_e: complex = Field(description="Representative quasienergy, Re in [0, ω/2], Im ≥ 0")
    eta: float = Field(description="Imaginary part of the quasienergy (0 when unbroken)")
    x: float = Field(description="Folding variable (r/E) sin(Eτ)")
    c: complex
    hf_vector: np.ndarray = Field(description="Coefficients of σ_x, σ_y, σ_z")
    matrix: np.ndarray
    exceptional: bool = False

    @property
    def broken(self) -> bool:
        return abs(self.x) > 1.0


class ShiftedFloquet(ArrayModel):
    curly_e_s: complex = Field(description="Shifted eigenvalue E - ω/2")
    matrix: np.ndarray


class SymmetryFlags(BaseModel):
    model_config = ConfigDict(frozen=True)

    sublattice: bool
    pseudo_hermitian: bool
    chiral: bool


class SpectrumEntry(ArrayModel):
    energy: complex
    state: np.ndarray
    ipr: float


class Spectrum(ArrayModel):
    ''' Energies (or folded quasienergies) with unit-norm states and their IPRs '''
    energies: np.ndarray
    states: np.ndarray = Field(description="States as columns")
    iprs: np.ndarray
    omega: float | None = Field(default=None, description="Driving frequency for Floquet spectra")

    def __len__(self) -> int:
        return len(self.energies)

    def __iter__(self) -> Iterator[SpectrumEntry]:
        for n in range(len(self.energies)):
            yield SpectrumEntry(energy=complex(self.energies[n]), state=self.states[:, n], ipr=float(self.iprs[n]))


class EdgeState(ArrayModel):
    index: int = Field(description="Position in the parent spectrum")
    energy: complex
    state: np.ndarray
    ipr: float
    left_weight: float
    right_weight: float


class CellStatus(str, Enum):
    OK = "OK"
    EXCEPTIONAL = "EXCEPTIONAL"
    DEFECTIVE = "DEFECTIVE"


class GridAxis(BaseModel):
    ''' Named, uniformly spaced, strictly increasing parameter axis '''
    model_config = ConfigDict(frozen=True)

    name: str
    values: tuple[float, ...]

    @field_validator("values")
    @classmethod
    def check_increasing(cls, values: tuple[float, ...]) -> tuple[float, ...]:
        if len(values) == 0:
            raise ValueError("axis needs at least one value")
        if not all(math.isfinite(x) for x in values):
            raise ValueError("axis values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("axis values must be strictly increasing")
        return values

    @classmethod
    def uniform(cls, name: str, start: float, stop: float, count: int) -> "GridAxis":
        if count < 1:
            raise ValueError("axis needs at least one value")
        if count == 1:
            return cls(name=name, values=(float(start),))
        return cls(name=name, values=tuple(float(x) for x in np.linspace(start, stop, count)))

    @classmethod
    def parse(cls, name: str, text: str) -> "GridAxis":
        ''' "0.25" for a single value or "min:max:count" for a range '''
        parts = str(text).split(":")
        if len(parts) == 1:
            return cls(name=name, values=(float(parts[0]),))
        if len(parts) != 3:
            raise ValueError(f"expected a value or min:max:count, got {text!r}")
        return cls.uniform(name, float(parts[0]), float(parts[1]), int(parts[2]))

    def __len__(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


class PhaseGrid(ArrayModel):
    ''' max|Im ε| over a parameter plane; values[iy, ix] belongs to (x_axis[ix], y_axis[iy]) '''
    x_axis: GridAxis
    y_axis: GridAxis
    values: np.ndarray
    flags: np.ndarray
    resonances: tuple[float, ...] = ()

    def count(self, status: CellStatus) -> int:
        return int(np.count_nonzero(self.flags == status.value))


class SweepResult(ArrayModel):
    axis: GridAxis
    spectra: list[Spectrum | None]
    statuses: list[CellStatus]
