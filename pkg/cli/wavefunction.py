"""
Wavefunction curves on a grid: bound states from truncated-matrix eigenvectors, Coulomb scattering states
"""

import logging
from typing import Optional

import numpy as np

from cli.output import ResultTable, parse_list, pick
from errors import DomainError
from schemas import CoulombParams, ExpansionCoefficients, MorseParams, ScarfParams, WellParams
from settings import get_settings
from solver.eig import eigenpairs
from solver.wavefun import converged_reconstruction, count_nodes, reconstruct_bound, reconstruct_scatter_coulomb
from solver.wavop import system_matrix

logger = logging.getLogger(__name__)


def _bound_system(name: str, args, config):
    L = pick(args, config, "L", 1.0, float)
    if name == "well":
        return WellParams.dimensionless(pick(args, config, "gamma", 5.0, float), L=L)
    if name == "scarf":
        return ScarfParams.dimensionless(
            pick(args, config, "v0", 7.0, float),
            pick(args, config, "vplus", 5.0, float),
            pick(args, config, "vminus", 3.0, float),
            L=L,
        )
    if name == "morse":
        return MorseParams(
            lam=pick(args, config, "lam", 1.0, float),
            V1=pick(args, config, "V1", -2.0, float),
            nu=pick(args, config, "nu", get_settings().morse_nu, float),
        )
    raise DomainError(f"unknown system {name!r}")


def bound_state_curves(system, levels, N: int, x: np.ndarray, tol: Optional[float] = None):
    """Each curve comes from a basis doubled from N until it moves by less than tol"""
    if isinstance(system, MorseParams):
        available = system.bound_state_count
    else:
        available = N
    if not levels:
        raise DomainError("no levels requested")
    for k in levels:
        if not 0 <= k < available:
            raise DomainError(f"level {k} is outside the {available} computed bound states")

    top = max(levels)
    spectra = {}

    def level_curve(k: int, n: int):
        if n not in spectra:
            spectra[n] = eigenpairs(system_matrix(system, n), [0, top])
        psi = reconstruct_bound(system, ExpansionCoefficients.from_eigenvector(spectra[n], k), x, basis_size=n)
        logger.debug("level %d, %d terms: eps=%.9f, %d nodes", k, n, spectra[n].eigenvalues[k], count_nodes(psi, 1))
        return psi

    curves = []
    for k in levels:
        psi = converged_reconstruction(lambda n, k=k: level_curve(k, n), N, tol)
        curves.append(psi.values)
    return curves


def cmd_wavefunction(args, config, options) -> ResultTable:
    """Columns x, psi_k; x in units of L for box systems and of 1/lambda otherwise"""
    name = pick(args, config, "system", "well")
    grid_size = pick(args, config, "grid_size", 201, int)
    N = pick(args, config, "basis_size", get_settings().basis_size, int)
    tol = pick(args, config, "tol", get_settings().convergence_tol, float)
    if grid_size < 2:
        raise DomainError("grid needs at least 2 points")

    if name == "coulomb":
        p = CoulombParams(
            Z=pick(args, config, "Z", 1.0, float),
            ell=pick(args, config, "ell", 0, int),
            lam=pick(args, config, "lam", 1.0, float),
            E=pick(args, config, "E", 0.5, float),
        )
        r_max = pick(args, config, "xmax", 20.0, float)
        r = np.linspace(0.0, r_max, grid_size)
        psi = converged_reconstruction(lambda n: reconstruct_scatter_coulomb(p, n, r, summation="smooth"), N, tol)
        return ResultTable(
            columns=["r", "psi"],
            rows=[[float(a), float(b)] for a, b in zip(r, psi.values)],
            parameters={
                "system": name, "Z": p.Z, "ell": p.ell, "lam": p.lam, "E": p.E, "grid_size": grid_size, "tol": tol
            },
            basis_size=N,
        )

    system = _bound_system(name, args, config)
    levels = parse_list(pick(args, config, "levels", "0,1,2"), int)
    if isinstance(system, MorseParams):
        lo = pick(args, config, "xmin", -10.0, float) / system.lam
        hi = pick(args, config, "xmax", 4.0, float) / system.lam
        x = np.linspace(lo, hi, grid_size)
        scaled = x * system.lam
    else:
        x = np.linspace(-system.L / 2, system.L / 2, grid_size)
        scaled = x / system.L
    curves = bound_state_curves(system, levels, N, x, tol)
    rows = [[float(scaled[i])] + [float(c[i]) for c in curves] for i in range(grid_size)]
    return ResultTable(
        columns=["x"] + [f"psi_{k}" for k in levels],
        rows=rows,
        parameters={"system": name, "levels": levels, "grid_size": grid_size, "tol": tol, **system.model_dump()},
        basis_size=N,
    )


def register(subparsers, parents) -> None:
    wf = subparsers.add_parser("wavefunction", parents=parents, help="wavefunction curves on a grid")
    wf.add_argument("--system", choices=["well", "scarf", "morse", "coulomb"])
    wf.add_argument("--levels", help="comma-separated bound-state indices (default 0,1,2)")
    wf.add_argument("--tol", type=float, help="max-norm change allowed when the basis doubles")
    wf.add_argument("--grid-size", dest="grid_size", type=int)
    wf.add_argument("--basis-size", dest="basis_size", type=int)
    wf.add_argument("--gamma", type=float)
    wf.add_argument("--v0", type=float)
    wf.add_argument("--vplus", type=float)
    wf.add_argument("--vminus", type=float)
    wf.add_argument("--L", dest="L", type=float)
    wf.add_argument("--lam", type=float)
    wf.add_argument("--V1", dest="V1", type=float)
    wf.add_argument("--nu", type=float)
    wf.add_argument("--Z", dest="Z", type=float)
    wf.add_argument("--ell", type=int)
    wf.add_argument("--E", dest="E", type=float)
    wf.add_argument("--xmin", type=float)
    wf.add_argument("--xmax", type=float)
    wf.set_defaults(handler=cmd_wavefunction)
