"""
Pydantic models for recursions, matrices, physical systems and results
"""

import math
from typing import Annotated, Callable, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from errors import DomainError, NonFiniteInputError, RealityViolationError
from settings import get_settings


def _as_array(value) -> np.ndarray:
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    return arr


def _one(n: int) -> float:
    return 1.0


class ArrayModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


# Recursions

class RecurrenceSpec(ArrayModel):
    """z c_n P_n = a_n P_n + b_{n-1} P_{n-1} + b_n P_{n+1}, coefficients as functions of n"""

    a: Callable[[int], float]
    b: Callable[[int], float]
    c: Callable[[int], float] = _one
    family_label: str = "custom"


class PolySequence(ArrayModel):
    z: float
    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def coerce_values(cls, v):
        return _as_array(v)

    @field_validator("values")
    @classmethod
    def starts_at_one(cls, v):
        if v[0] != 1.0:
            raise ValueError("P_0 must be exactly 1")
        return v

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


# Matrices

class SymTridiag(ArrayModel):
    """Symmetric tridiagonal matrix stored as diagonal and one off-diagonal"""

    diag: np.ndarray
    off: np.ndarray

    @field_validator("diag", "off", mode="before")
    @classmethod
    def coerce(cls, v):
        arr = np.asarray(v, dtype=np.float64).reshape(-1)
        return arr

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.diag) < 1:
            raise ValueError("matrix needs at least one row")
        if len(self.off) != len(self.diag) - 1:
            raise ValueError(f"off-diagonal length {len(self.off)} != {len(self.diag) - 1}")
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.off))):
            raise NonFiniteInputError("matrix has non-finite entries")
        return self

    @property
    def size(self) -> int:
        return len(self.diag)

    def norm_inf(self) -> float:
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.off)
        row[1:] += np.abs(self.off)
        return float(row.max())

    def leading(self, m: int) -> "SymTridiag":
        """Leading m x m principal submatrix"""
        return SymTridiag(diag=self.diag[:m], off=self.off[: max(m - 1, 0)])

    def negated_off(self) -> "SymTridiag":
        return SymTridiag(diag=self.diag, off=-self.off)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag[:, None] * v if v.ndim == 2 else self.diag * v
        if self.size > 1:
            if v.ndim == 2:
                out[:-1] += self.off[:, None] * v[1:]
                out[1:] += self.off[:, None] * v[:-1]
            else:
                out[:-1] += self.off * v[1:]
                out[1:] += self.off * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


# Physical systems (hbar = m = 1)

class WellParams(BaseModel):
    """Infinite well on [-L/2, L/2] with bottom V0 sin(pi x / L)"""

    model_config = ConfigDict(frozen=True)

    system: Literal["well"] = "well"
    V0: float = 0.0
    L: float = Field(default=1.0, gt=0)
    alpha: Optional[float] = None

    @classmethod
    def dimensionless(cls, gamma: float, L: float = 1.0) -> "WellParams":
        lam = math.pi / L
        return cls(V0=gamma * lam**2 / 2, L=L)

    @property
    def lam(self) -> float:
        return math.pi / self.L

    @property
    def gamma(self) -> float:
        return 2 * self.V0 / self.lam**2

    @property
    def energy_unit(self) -> float:
        return self.lam**2 / 2

    @property
    def bounds(self) -> Tuple[float, float]:
        return (-self.L / 2, self.L / 2)

    def potential(self, x):
        return self.V0 * np.sin(self.lam * np.asarray(x, dtype=np.float64))


class ScarfParams(BaseModel):
    """Trigonometric Scarf well with sinusoidal term on [-L/2, L/2]"""

    model_config = ConfigDict(frozen=True)

    system: Literal["scarf"] = "scarf"
    V0: float = 0.0
    Vplus: float = 0.0
    Vminus: float = 0.0
    L: float = Field(default=1.0, gt=0)

    @classmethod
    def dimensionless(cls, v0: float, vplus: float, vminus: float, L: float = 1.0) -> "ScarfParams":
        """Potential strengths given in units of lambda^2 / 2"""
        unit = (math.pi / L) ** 2 / 2
        return cls(V0=v0 * unit, Vplus=vplus * unit, Vminus=vminus * unit, L=L)

    @model_validator(mode="after")
    def check_reality(self):
        bound = abs(self.Vminus) - self.lam**2 / 8
        if self.Vplus < bound - 1e-12 * max(1.0, abs(bound)):
            raise RealityViolationError(
                f"V+ = {self.Vplus} is below |V-| - lambda^2/8 = {bound}",
                constraint="V+ >= |V-| - lambda^2/8",
            )
        return self

    @property
    def lam(self) -> float:
        return math.pi / self.L

    @property
    def energy_unit(self) -> float:
        return self.lam**2 / 2

    @property
    def U0(self) -> float:
        return 2 * self.V0 / self.lam**2

    @property
    def mu(self) -> float:
        return math.sqrt(max(0.25 + 2 * (self.Vplus - self.Vminus) / self.lam**2, 0.0))

    @property
    def nu(self) -> float:
        return math.sqrt(max(0.25 + 2 * (self.Vplus + self.Vminus) / self.lam**2, 0.0))

    @property
    def bounds(self) -> Tuple[float, float]:
        return (-self.L / 2, self.L / 2)

    def potential(self, x):
        s = np.sin(self.lam * np.asarray(x, dtype=np.float64))
        return (self.Vplus - self.Vminus * s) / (1 - s**2) + self.V0 * s


class CoulombParams(BaseModel):
    """Repulsive Coulomb scattering, V(r) = Z/r, at energy E > 0"""

    model_config = ConfigDict(frozen=True)

    system: Literal["coulomb"] = "coulomb"
    Z: float = Field(gt=0)
    ell: int = Field(default=0, ge=0)
    lam: float = Field(default=1.0, gt=0)
    E: float = Field(gt=0)
    nu: Optional[float] = None
    alpha: Optional[float] = None

    @property
    def gamma_c(self) -> float:
        return self.Z / self.lam

    @property
    def kappa(self) -> float:
        return math.sqrt(2 * self.E)

    @property
    def eps(self) -> float:
        return (self.kappa / self.lam) ** 2

    @property
    def eta(self) -> float:
        return self.Z / self.kappa

    @property
    def energy_unit(self) -> float:
        return self.lam**2 / 2

    @property
    def bounds(self) -> Tuple[float, float]:
        return (0.0, math.inf)

    def potential(self, r):
        r = np.asarray(r, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return self.Z / r + self.ell * (self.ell + 1) / (2 * r**2)


class MorseParams(BaseModel):
    """1D Morse potential (lambda^2/8) e^{2 lambda x} + V1 e^{lambda x}"""

    model_config = ConfigDict(frozen=True)

    system: Literal["morse"] = "morse"
    lam: float = Field(default=1.0, gt=0)
    V1: float = 0.0
    V2: Optional[float] = None
    nu: float = Field(default_factory=lambda: get_settings().morse_nu)

    @model_validator(mode="after")
    def check_nu(self):
        if not self.nu > -1:
            raise DomainError(f"basis parameter nu = {self.nu} must exceed -1", constraint="nu > -1")
        return self

    @classmethod
    def dimensionless(cls, u1: float, lam: float = 1.0, nu: Optional[float] = None) -> "MorseParams":
        kwargs = {"lam": lam, "V1": u1 * lam**2 / 2}
        if nu is not None:
            kwargs["nu"] = nu
        return cls(**kwargs)

    @property
    def U1(self) -> float:
        return 2 * self.V1 / self.lam**2

    @property
    def U2(self) -> float:
        v2 = self.lam**2 / 8 if self.V2 is None else self.V2
        return 2 * v2 / self.lam**2

    @property
    def energy_unit(self) -> float:
        return self.lam**2 / 2

    @property
    def bound_state_count(self) -> int:
        """Number of bound states, k = 0..N_b (zero when U1 >= -1/2)"""
        if self.U1 < -0.5:
            return math.floor(-self.U1 - 0.5) + 1
        return 0

    def potential(self, x):
        y = np.exp(self.lam * np.asarray(x, dtype=np.float64))
        return self.lam**2 * self.U2 / 2 * y**2 + self.V1 * y


SystemParams = Annotated[
    Union[WellParams, ScarfParams, CoulombParams, MorseParams],
    Field(discriminator="system"),
]


class BasisReport(BaseModel):
    system: str
    family: Literal["laguerre", "chebyshev_u", "jacobi"]
    exponents: Dict[str, float]
    constraints: List[str]


# Spectra and measures

class SpectrumResult(ArrayModel):
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None
    units: Literal["dimensionless", "physical"] = "dimensionless"

    @field_validator("eigenvalues", mode="before")
    @classmethod
    def coerce(cls, v):
        return np.asarray(v, dtype=np.float64).reshape(-1)

    @model_validator(mode="after")
    def check_order(self):
        ev = self.eigenvalues
        if len(ev) > 1:
            scale = max(1.0, float(np.max(np.abs(ev))))
            if np.any(np.diff(ev) < -1e-12 * scale):
                raise ValueError("eigenvalues must be ascending")
        if self.eigenvectors is not None and self.eigenvectors.shape[1] != len(ev):
            raise ValueError("one eigenvector column per eigenvalue")
        return self

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def to_physical(self, energy_unit: float) -> "SpectrumResult":
        if self.units == "physical":
            return self
        return self.model_copy(update={"eigenvalues": self.eigenvalues * energy_unit, "units": "physical"})


class DiscreteMeasure(ArrayModel):
    """Gauss nodes and weights plus sqrt(w_k) P_n(x_k) for n, k < N"""

    nodes: np.ndarray
    weights: np.ndarray
    weighted_polys: np.ndarray

    @model_validator(mode="after")
    def check_weights(self):
        # weights of strongly localized nodes can underflow to zero
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        if abs(self.weights.sum() - 1.0) > 1e-12 * len(self.weights):
            raise ValueError(f"weights sum to {self.weights.sum()}, not 1")
        return self

    @property
    def polynomials(self) -> np.ndarray:
        """P_n(x_k); infinite where a weight underflowed"""
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.weighted_polys / np.sqrt(self.weights)[None, :]

    def gram(self, n_max: Optional[int] = None) -> np.ndarray:
        """sum_k w_k P_n(x_k) P_m(x_k) for n, m <= n_max"""
        q = self.weighted_polys if n_max is None else self.weighted_polys[: n_max + 1]
        return q @ q.T

    def moments(self, m_max: int) -> np.ndarray:
        return np.array([np.sum(self.weights * self.nodes**m) for m in range(m_max + 1)])


# Grids and wavefunctions

class GridFunction(ArrayModel):
    abscissae: np.ndarray
    values: np.ndarray

    @field_validator("abscissae", "values", mode="before")
    @classmethod
    def coerce(cls, v):
        return _as_array(v)

    @model_validator(mode="after")
    def check_grid(self):
        if len(self.abscissae) != len(self.values):
            raise ValueError("abscissae and values differ in length")
        if np.any(np.diff(self.abscissae) <= 0):
            raise ValueError("abscissae must be strictly ascending")
        return self

    @property
    def spacing(self) -> float:
        """Uniform step; raises if the grid is not uniform"""
        steps = np.diff(self.abscissae)
        h = float(steps.mean())
        if not np.allclose(steps, h, rtol=1e-8, atol=0):
            raise ValueError("grid is not uniform")
        return h

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def normalized(self) -> "GridFunction":
        """Scaled to max |psi| = 1 with the largest excursion positive"""
        peak = self.values[np.argmax(np.abs(self.values))]
        return GridFunction(abscissae=self.abscissae, values=self.values / peak)


class ExpansionCoefficients(ArrayModel):
    coeffs: np.ndarray
    normalization: Literal["eigenvector", "weighted"] = "eigenvector"

    @field_validator("coeffs", mode="before")
    @classmethod
    def coerce(cls, v):
        return _as_array(v)

    @field_validator("coeffs")
    @classmethod
    def check_coeffs(cls, v):
        if not np.all(np.isfinite(v)):
            raise NonFiniteInputError("expansion coefficients are not finite")
        if not np.any(v != 0):
            raise ValueError("expansion coefficients are all zero")
        return v

    @classmethod
    def from_eigenvector(cls, spectrum: SpectrumResult, k: int) -> "ExpansionCoefficients":
        if spectrum.eigenvectors is None:
            raise ValueError("spectrum was computed without eigenvectors")
        return cls(coeffs=spectrum.eigenvectors[:, k], normalization="eigenvector")

    @classmethod
    def from_measure(cls, measure: DiscreteMeasure, k: int) -> "ExpansionCoefficients":
        return cls(coeffs=measure.weighted_polys[:, k], normalization="weighted")


# Scattering

class PhaseShift(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: float
    modulo_note: Literal["exact", "modulo_half_pi"] = "exact"

    @field_validator("delta")
    @classmethod
    def principal(cls, v):
        if not math.isfinite(v):
            raise ValueError("phase shift must be finite")
        return wrap_phase(v)


def wrap_phase(angle: float) -> float:
    """Map to (-pi, pi]"""
    wrapped = math.remainder(angle, 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2 * math.pi
    return wrapped


class AsymptoticModel(BaseModel):
    """
    Template for n^{-tau} A cos(n^xi theta + phi log n + delta).
    Active "theta": phi is held fixed, theta known or fitted.
    Active "phi": theta = 0, phi known or fitted.
    """

    model_config = ConfigDict(frozen=True)

    active: Literal["theta", "phi"]
    tau: float = 0.0
    xi: float = 1.0
    theta: Optional[float] = None
    phi: Optional[float] = None
    theta_guess: Optional[float] = None
    phi_guess: Optional[float] = None
    window: Optional[Tuple[int, int]] = None
    correction_order: int = Field(default=0, ge=0)
    tolerance: Optional[float] = None

    @model_validator(mode="after")
    def check_mode(self):
        if self.active == "phi":
            if self.theta not in (None, 0.0):
                raise ValueError("theta must vanish when phi is active")
            if self.phi is None and self.phi_guess is None:
                raise ValueError("phi must be given or have a starting guess")
        return self


class AsymptoticFit(BaseModel):
    model_config = ConfigDict(frozen=True)

    amplitude_envelope: float = Field(ge=0)
    tau: float
    xi: float
    theta: float
    phi: float
    delta_est: float
    residual: float
    window: Tuple[int, int]


# Finite differences

class FDProblem(ArrayModel):
    """-(1/2) psi'' + V psi = E psi on [lower, upper] with Dirichlet ends"""

    potential: Callable[[np.ndarray], np.ndarray]
    lower: float
    upper: float
    intervals: int = Field(default_factory=lambda: get_settings().fd_intervals, ge=49)
    boundary: Literal["dirichlet_both", "dirichlet_left_decay_right"] = "dirichlet_both"
    clip_points: int = Field(default=0, ge=0)
    energy_unit: float = Field(default=1.0, gt=0)
    # what the returned levels are measured in, after dividing by energy_unit
    units: Literal["dimensionless", "physical"] = "physical"
    label: str = "custom"

    @model_validator(mode="after")
    def check_interval(self):
        if not self.upper > self.lower:
            raise ValueError("upper bound must exceed lower bound")
        if self.units == "physical" and self.energy_unit != 1.0:
            raise ValueError("levels scaled by an energy unit other than 1 cannot be physical")
        return self

    def spacing(self, intervals: Optional[int] = None) -> float:
        return (self.upper - self.lower) / (intervals or self.intervals)

    def nodes(self, intervals: Optional[int] = None) -> np.ndarray:
        """Unknowns of the grid; clip_points nodes next to each wall are dropped"""
        m = intervals or self.intervals
        c = self.clip_points
        if m - 2 * c < 3:
            raise ValueError(f"{m} intervals leave no interior after clipping {c} points")
        return self.lower + self.spacing(m) * np.arange(1 + c, m - c)

    def sample(self, intervals: Optional[int] = None) -> GridFunction:
        x = self.nodes(intervals)
        return GridFunction(abscissae=x, values=self.potential(x))


class FDSpectrum(SpectrumResult):
    """Richardson-extrapolated levels with the raw values from grids h and h/2"""

    raw_coarse: np.ndarray
    raw_fine: np.ndarray


# Output

class RunManifest(BaseModel):
    command: str
    parameters: Dict[str, object]
    basis_size: Optional[int] = None
    tool_version: str
    timestamp: str
