"""
Spectrum tables for the sinusoidal-bottom well and the generalized Scarf well
"""

from typing import List

from cli.output import ResultTable, parse_list, pick
from errors import DomainError
from schemas import ScarfParams, WellParams
from settings import get_settings
from solver.eig import eigendecompose
from solver.wavop import scarf_matrix, well_matrix

DEFAULT_GAMMAS = "0,2,5,10,20"
DEFAULT_SIZES = "10,11,12,13,100"
LEVELS = 10


def well_levels(gamma: float, N: int, levels: int = LEVELS, L: float = 1.0):
    p = WellParams.dimensionless(gamma, L=L)
    return eigendecompose(well_matrix(p, N)).eigenvalues[:levels], p.energy_unit


def scarf_levels(v0: float, vplus: float, vminus: float, N: int, levels: int = LEVELS, L: float = 1.0):
    p = ScarfParams.dimensionless(v0, vplus, vminus, L=L)
    return eigendecompose(scarf_matrix(p, N)).eigenvalues[:levels], p.energy_unit


def _columns_to_rows(columns: List, levels: int) -> List[List[object]]:
    return [[n] + [float(col[n]) if n < len(col) else None for col in columns] for n in range(levels)]


def cmd_table2(args, config, options) -> ResultTable:
    gammas = parse_list(pick(args, config, "gammas", DEFAULT_GAMMAS))
    N = pick(args, config, "basis_size", get_settings().basis_size, int)
    L = pick(args, config, "L", 1.0, float)
    if N < LEVELS:
        raise DomainError(f"basis size {N} is below the {LEVELS} tabulated levels", constraint="N >= 10")
    columns = []
    for gamma in gammas:
        values, unit = well_levels(gamma, N, L=L)
        columns.append(values * unit if options.units == "physical" else values)
    return ResultTable(
        columns=["n"] + [f"gamma={g:g}" for g in gammas],
        rows=_columns_to_rows(columns, LEVELS),
        parameters={"gammas": gammas, "L": L},
        basis_size=N,
    )


def cmd_table3(args, config, options) -> ResultTable:
    v0 = pick(args, config, "v0", 7.0, float)
    vplus = pick(args, config, "vplus", 5.0, float)
    vminus = pick(args, config, "vminus", 3.0, float)
    sizes = parse_list(pick(args, config, "sizes", DEFAULT_SIZES), int)
    L = pick(args, config, "L", 1.0, float)
    columns = []
    for N in sizes:
        values, unit = scarf_levels(v0, vplus, vminus, N, L=L)
        columns.append(values * unit if options.units == "physical" else values)
    return ResultTable(
        columns=["n"] + [f"N={N}" for N in sizes],
        rows=_columns_to_rows(columns, LEVELS),
        parameters={"V0": v0, "V+": vplus, "V-": vminus, "sizes": sizes, "L": L},
        basis_size=max(sizes) if sizes else None,
    )


def register(subparsers, parents) -> None:
    table2 = subparsers.add_parser("table2", parents=parents, help="well spectrum for several gamma")
    table2.add_argument("--gammas", help=f"comma-separated gamma values (default {DEFAULT_GAMMAS})")
    table2.add_argument("--basis-size", dest="basis_size", type=int)
    table2.add_argument("--L", dest="L", type=float, help="well width for physical units")
    table2.set_defaults(handler=cmd_table2)

    table3 = subparsers.add_parser("table3", parents=parents, help="Scarf-well spectrum for several basis sizes")
    table3.add_argument("--v0", type=float, help="V0 in units of lambda^2/2 (default 7)")
    table3.add_argument("--vplus", type=float, help="V+ in units of lambda^2/2 (default 5)")
    table3.add_argument("--vminus", type=float, help="V- in units of lambda^2/2 (default 3)")
    table3.add_argument("--sizes", help=f"comma-separated basis sizes (default {DEFAULT_SIZES})")
    table3.add_argument("--L", dest="L", type=float)
    table3.set_defaults(handler=cmd_table3)
