"""
Basis functions on grids, wavefunction reconstruction and finite-difference diagnostics
"""

import logging
import math
import warnings
from functools import singledispatch
from typing import Callable, Literal, Optional

import numpy as np
from scipy.integrate import trapezoid

from errors import BasisMismatchError, ConvergenceError, DomainError, GridResolutionWarning
from schemas import (
    CoulombParams,
    ExpansionCoefficients,
    GridFunction,
    MorseParams,
    ScarfParams,
    WellParams,
)
from settings import get_settings
from solver.opoly import (
    chebyshev_u_table,
    eval_recursion,
    jacobi_table,
    laguerre_normalized_table,
    norm_chebyshev,
    norm_jacobi,
)
from solver.wavop import coulomb_argument, coulomb_recurrence

logger = logging.getLogger(__name__)

LOG_FLOAT_MAX = math.log(np.finfo(np.float64).max)

# exp(-alpha (n/N)^order) spectral filter for conditionally convergent sums
FILTER_ALPHA = 36.0
FILTER_ORDER = 8


def _grid(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=np.float64))


def _check_box(x: np.ndarray, half_width: float) -> None:
    if np.any(np.abs(x) > half_width * (1 + 1e-12)):
        raise DomainError(f"grid leaves the box |x| <= {half_width}")


@singledispatch
def basis_table(system, n_max: int, x) -> np.ndarray:
    """phi_0..phi_{n_max} on the grid, shape (n_max + 1, len(x))"""
    raise DomainError(f"no basis for {type(system).__name__}")


@basis_table.register
def _(system: WellParams, n_max: int, x) -> np.ndarray:
    x = _grid(x)
    _check_box(x, system.L / 2)
    y = np.sin(system.lam * x)
    envelope = norm_chebyshev() * np.sqrt(np.clip(1 - y * y, 0.0, None))
    return envelope[None, :] * chebyshev_u_table(n_max, y)


@basis_table.register
def _(system: ScarfParams, n_max: int, x) -> np.ndarray:
    x = _grid(x)
    _check_box(x, system.L / 2)
    mu, nu = system.mu, system.nu
    y = np.clip(np.sin(system.lam * x), -1.0, 1.0)
    envelope = (1 - y) ** (mu / 2 + 0.25) * (1 + y) ** (nu / 2 + 0.25)
    norms = np.array([norm_jacobi(n, mu, nu) for n in range(n_max + 1)])
    return norms[:, None] * envelope[None, :] * jacobi_table(n_max, mu, nu, y)


@basis_table.register
def _(system: CoulombParams, n_max: int, x) -> np.ndarray:
    r = _grid(x)
    if np.any(r < 0):
        raise DomainError("radial grid has negative r")
    y = system.lam * r
    ell = system.ell
    envelope = y ** (ell + 1) * np.exp(-y / 2)
    return envelope[None, :] * laguerre_normalized_table(n_max, 2 * ell + 1, y)


@basis_table.register
def _(system: MorseParams, n_max: int, x) -> np.ndarray:
    x = _grid(x)
    lx = system.lam * x
    if np.any(lx > LOG_FLOAT_MAX):
        raise DomainError(f"exp(lambda x) overflows for lambda x > {LOG_FLOAT_MAX:.2f}")
    y = np.exp(lx)
    nu = system.nu
    envelope = np.exp((nu + 1) / 2 * lx - y / 2)
    return envelope[None, :] * laguerre_normalized_table(n_max, nu, y)


def basis_sample(system, n: int, grid) -> GridFunction:
    x = _grid(grid)
    return GridFunction(abscissae=x, values=basis_table(system, n, x)[n])


def reconstruct_bound(
    system, coeffs: ExpansionCoefficients, grid, basis_size: Optional[int] = None
) -> GridFunction:
    """
    psi_k(x) = sum_n f_n phi_n(x), left un-normalized.
    With eigenvector coefficients the discrete weight is not applied.
    """
    if isinstance(system, CoulombParams):
        raise DomainError("the Coulomb system has no bound states in this representation")
    limit = basis_size or get_settings().max_basis_size
    n_terms = len(coeffs.coeffs)
    if n_terms > limit:
        raise BasisMismatchError(f"{n_terms} coefficients for a basis truncated at {limit}")
    x = _grid(grid)
    values = coeffs.coeffs @ basis_table(system, n_terms - 1, x)
    return GridFunction(abscissae=x, values=values)


def reconstruct_scatter_coulomb(
    p: CoulombParams,
    n_terms: int,
    grid,
    summation: Literal["partial", "smooth"] = "partial",
) -> GridFunction:
    """
    Energy-polynomial expansion of the Coulomb scattering state, scaled to max |psi| = 1.
    The terms decay like n^(-3/4), so "smooth" damps the tail with an exponential filter.
    """
    if n_terms < 1:
        raise DomainError(f"n_terms = {n_terms} must be at least 1")
    x = _grid(grid)
    P = eval_recursion(coulomb_recurrence(p), coulomb_argument(p), n_terms - 1).values
    if summation == "smooth":
        n = np.arange(n_terms, dtype=np.float64)
        P = P * np.exp(-FILTER_ALPHA * (n / n_terms) ** FILTER_ORDER)
    values = P @ basis_table(p, n_terms - 1, x)
    psi = GridFunction(abscissae=x, values=values)
    if psi.max_abs() == 0:
        return psi
    return psi.normalized()


def self_convergence(build: Callable[[int], GridFunction], n_terms: int) -> float:
    """Max-norm change of a reconstruction when n_terms doubles"""
    coarse, fine = build(n_terms), build(2 * n_terms)
    return float(np.max(np.abs(fine.values - coarse.values)))


def converged_reconstruction(
    build: Callable[[int], GridFunction],
    n_terms: int,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> GridFunction:
    """Double n_terms until self_convergence drops below tol; the finer of the last pair is returned"""
    settings = get_settings()
    tol = tol if tol is not None else settings.convergence_tol
    limit = min(max_terms or settings.reconstruction_max_terms, settings.max_basis_size)
    coarse = build(n_terms)
    while 2 * n_terms <= limit:
        fine = build(2 * n_terms)
        change = float(np.max(np.abs(fine.values - coarse.values)))
        if change < tol:
            return fine
        logger.info("reconstruction with %d terms changed by %.3e, doubling", n_terms, change)
        coarse, n_terms = fine, 2 * n_terms
    raise ConvergenceError(f"reconstruction did not settle below {tol:g} within {limit} terms")


def residual_check(system, E: float, psi: GridFunction) -> float:
    """max |H psi - E psi| over interior points, relative to max |E psi|"""
    if len(psi.abscissae) < 5:
        raise DomainError("residual check needs at least 5 grid points")
    h = psi.spacing
    x, v = psi.abscissae, psi.values
    pot = system.potential(x[1:-1])
    lap = (v[2:] - 2 * v[1:-1] + v[:-2]) / h**2
    resid = -0.5 * lap + pot * v[1:-1] - E * v[1:-1]

    k_local = np.sqrt(np.clip(2 * (E - pot), 0.0, None))
    if np.nanmax(k_local) * h > 0.5:
        warnings.warn(
            f"grid spacing {h:.3g} is coarse for local wavenumber {np.nanmax(k_local):.3g}",
            GridResolutionWarning,
            stacklevel=2,
        )
    scale = np.max(np.abs(E * v))
    return float(np.nanmax(np.abs(resid)) / scale)


def count_nodes(psi: GridFunction, boundary_pad: int = 0) -> int:
    """Strict interior sign changes, ignoring values at rounding level"""
    if boundary_pad < 0:
        raise DomainError("boundary_pad must be nonnegative")
    v = psi.values[boundary_pad : len(psi.values) - boundary_pad]
    if v.size == 0:
        return 0
    floor = 1e-12 * np.max(np.abs(psi.values))
    signs = np.sign(v[np.abs(v) > floor])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def overlap(a: GridFunction, b: GridFunction) -> float:
    """<a, b> / (|a| |b|) by the trapezoidal rule"""
    if not np.array_equal(a.abscissae, b.abscissae):
        raise DomainError("overlap needs both functions on the same grid")
    x = a.abscissae
    ab = trapezoid(a.values * b.values, x)
    return float(ab / math.sqrt(trapezoid(a.values**2, x) * trapezoid(b.values**2, x)))
