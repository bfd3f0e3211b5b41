"""
Finite-difference reference spectra with Richardson extrapolation
"""

import logging
import warnings
from typing import Optional

import numpy as np

from errors import GridResolutionWarning, GridTooCoarseError
from schemas import FDProblem, FDSpectrum, MorseParams, ScarfParams, SymTridiag, WellParams
from settings import get_settings
from solver.eig import lowest_eigenvalues, spectral_spacing

logger = logging.getLogger(__name__)

# extrapolation may move a level by at most this fraction of the level spacing
MAX_CORRECTION = 0.01


def fd_matrix(prob: FDProblem, intervals: Optional[int] = None) -> SymTridiag:
    """Three-point -(1/2) d^2/dx^2 + V on the unknown nodes"""
    m = intervals or prob.intervals
    h = prob.spacing(m)
    x = prob.nodes(m)
    diag = 1.0 / h**2 + prob.potential(x)
    off = np.full(len(x) - 1, -0.5 / h**2)
    return SymTridiag(diag=diag, off=off)


def fd_levels(prob: FDProblem, k: int, intervals: Optional[int] = None) -> np.ndarray:
    """Lowest k levels on one grid, in units of prob.energy_unit"""
    T = fd_matrix(prob, intervals)
    if k > T.size - 1:
        raise GridTooCoarseError(f"grid with {T.size} unknowns cannot resolve {k} levels")
    levels = lowest_eigenvalues(T, k)
    if prob.boundary == "dirichlet_left_decay_right":
        wall = float(prob.potential(np.array([prob.nodes(intervals)[-1]]))[0])
        if wall < levels[-1] + 10:
            warnings.warn(
                f"potential {wall:.3g} at the right wall is not far above level {levels[-1]:.3g}",
                GridResolutionWarning,
                stacklevel=2,
            )
    return levels / prob.energy_unit


def fd_spectrum(prob: FDProblem, k: int) -> FDSpectrum:
    """Levels on grids h and h/2 plus the extrapolation (4 E(h/2) - E(h)) / 3"""
    m = prob.intervals
    coarse = fd_levels(prob, k, m)
    fine = fd_levels(prob, k, 2 * m)
    extrapolated = (4 * fine - coarse) / 3

    correction = np.abs(extrapolated - fine)
    spacing = spectral_spacing(extrapolated)
    logger.debug("%s: largest extrapolation correction %.3e, spacing %.3e", prob.label, correction.max(), spacing)
    if np.any(correction > MAX_CORRECTION * spacing):
        raise GridTooCoarseError(
            f"extrapolation moved a level by {correction.max():.3e}, more than "
            f"{MAX_CORRECTION:.0%} of the level spacing {spacing:.3e}"
        )
    return FDSpectrum(eigenvalues=extrapolated, raw_coarse=coarse, raw_fine=fine, units=prob.units)


# Problems for the solvable systems

def well_problem(p: WellParams, intervals: Optional[int] = None) -> FDProblem:
    lower, upper = p.bounds
    return FDProblem(
        potential=p.potential,
        lower=lower,
        upper=upper,
        intervals=intervals or get_settings().fd_intervals,
        energy_unit=p.energy_unit,
        units="dimensionless",
        label=f"well(gamma={p.gamma:g})",
    )


def scarf_problem(p: ScarfParams, intervals: int = 8000, clip_points: Optional[int] = None) -> FDProblem:
    """Walls pulled in by clip_points nodes since the potential diverges at +-L/2"""
    lower, upper = p.bounds
    return FDProblem(
        potential=p.potential,
        lower=lower,
        upper=upper,
        intervals=intervals,
        clip_points=get_settings().scarf_clip_points if clip_points is None else clip_points,
        energy_unit=p.energy_unit,
        units="dimensionless",
        label=f"scarf(U0={p.U0:g}, mu={p.mu:g}, nu={p.nu:g})",
    )


def morse_problem(
    p: MorseParams, lower: float = -25.0, upper: float = 6.0, intervals: int = 6000
) -> FDProblem:
    """Physical energies; bounds are in units of 1/lambda"""
    return FDProblem(
        potential=p.potential,
        lower=lower / p.lam,
        upper=upper / p.lam,
        intervals=intervals,
        boundary="dirichlet_left_decay_right",
        label=f"morse(U1={p.U1:g})",
    )
