"""
TRA levels against the finite-difference oracle
"""

import logging

import numpy as np

from cli.output import ResultTable, parse_list, pick
from errors import DomainError
from schemas import MorseParams, ScarfParams, WellParams
from settings import get_settings
from solver.eig import eigendecompose
from solver.oracle import fd_spectrum, morse_problem, scarf_problem, well_problem
from solver.scatter import morse_bound_levels
from solver.wavop import scarf_matrix, well_matrix

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-5


def _compare(case: str, tra: np.ndarray, fd, scale: float = 1.0):
    rows = []
    for k, value in enumerate(tra):
        fd_value = fd.eigenvalues[k] / scale
        rows.append([
            case,
            k,
            float(value),
            float(fd_value),
            float(fd.raw_coarse[k] / scale),
            float(fd.raw_fine[k] / scale),
            float(abs(value - fd_value)),
        ])
    return rows


def well_cases(args, config, N: int):
    gammas = parse_list(pick(args, config, "gammas", "5"))
    levels = pick(args, config, "levels", 10, int)
    for gamma in gammas:
        p = WellParams.dimensionless(gamma)
        tra = eigendecompose(well_matrix(p, N)).eigenvalues[:levels]
        yield _compare(f"well gamma={gamma:g}", tra, fd_spectrum(well_problem(p), levels))


def scarf_cases(args, config, N: int):
    p = ScarfParams.dimensionless(
        pick(args, config, "v0", 7.0, float),
        pick(args, config, "vplus", 5.0, float),
        pick(args, config, "vminus", 3.0, float),
    )
    levels = pick(args, config, "levels", 6, int)
    tra = eigendecompose(scarf_matrix(p, N)).eigenvalues[:levels]
    yield _compare(f"scarf U0={p.U0:g}", tra, fd_spectrum(scarf_problem(p), levels))


def morse_cases(args, config, N: int):
    p = MorseParams(
        lam=pick(args, config, "lam", 1.0, float),
        V1=pick(args, config, "V1", -2.0, float),
    )
    tra = morse_bound_levels(p)
    if len(tra) == 0:
        raise DomainError(f"Morse potential with U1 = {p.U1:g} has no bound states to compare", constraint="U1 < -1/2")
    # the Morse oracle works in physical energies
    yield _compare(f"morse U1={p.U1:g}", tra, fd_spectrum(morse_problem(p), len(tra)), scale=p.energy_unit)


CASES = {"well": well_cases, "scarf": scarf_cases, "morse": morse_cases}


def cmd_oracle_check(args, config, options) -> ResultTable:
    """Exit code 3 when any level disagrees by more than --tol"""
    system = pick(args, config, "system", "well")
    if system not in CASES:
        raise DomainError(f"no oracle for system {system!r}")
    tol = pick(args, config, "tol", DEFAULT_TOL, float)
    N = pick(args, config, "basis_size", get_settings().basis_size, int)

    rows = [row for case in CASES[system](args, config, N) for row in case]
    worst = max((row[-1] for row in rows), default=0.0)
    table = ResultTable(
        columns=["case", "level", "tra", "fd", "fd_raw_coarse", "fd_raw_fine", "diff"],
        rows=rows,
        parameters={"system": system, "tol": tol, "max_diff": worst},
        basis_size=N,
    )
    if worst > tol:
        logger.error("largest TRA/FD disagreement %.3e exceeds %.1e", worst, tol)
        table.failure = f"TRA and finite differences disagree by {worst:.3e} > {tol:.1e}"
        table.exit_code = 3
    return table


def register(subparsers, parents) -> None:
    check = subparsers.add_parser("oracle-check", parents=parents, help="compare TRA levels with finite differences")
    check.add_argument("--system", choices=sorted(CASES))
    check.add_argument("--gammas", help="well: comma-separated gamma values (default 5)")
    check.add_argument("--v0", type=float)
    check.add_argument("--vplus", type=float)
    check.add_argument("--vminus", type=float)
    check.add_argument("--lam", type=float)
    check.add_argument("--V1", dest="V1", type=float)
    check.add_argument("--levels", type=int)
    check.add_argument("--basis-size", dest="basis_size", type=int)
    check.add_argument("--tol", type=float, help=f"largest accepted |difference| (default {DEFAULT_TOL:g})")
    check.set_defaults(handler=cmd_oracle_check)
