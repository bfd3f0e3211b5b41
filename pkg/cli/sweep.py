"""
Parameter sweeps in long format: one row per (parameter value, level)
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Dict, List

import numpy as np

from cli.output import ResultTable, parse_list, pick
from errors import DomainError
from schemas import MorseParams, ScarfParams, WellParams
from settings import get_settings
from solver.eig import eigendecompose
from solver.scatter import morse_bound_levels
from solver.wavop import system_matrix

logger = logging.getLogger(__name__)

# parameters each system can sweep, with their defaults
SWEEPABLE: Dict[str, Dict[str, float]] = {
    "well": {"gamma": 0.0},
    "scarf": {"v0": 7.0, "vplus": 5.0, "vminus": 3.0},
    "morse": {"u1": -4.0, "nu": 1.0},
}


def parse_range(text: str) -> List[float]:
    """START:STOP:COUNT, endpoints included; COUNT may be 0"""
    try:
        start, stop, count = text.split(":")
        count = int(count)
        start, stop = float(start), float(stop)
    except ValueError:
        raise DomainError(f"range {text!r} is not START:STOP:COUNT")
    if count < 0:
        raise DomainError("range count must not be negative", constraint="COUNT >= 0")
    return [float(v) for v in np.linspace(start, stop, count)]


def sweep_point(system: str, fixed: Dict[str, float], parameter: str, value: float, N: int, levels: int):
    """Dimensionless levels for one parameter value"""
    params = {**fixed, parameter: value}
    if system == "well":
        p = WellParams.dimensionless(params["gamma"])
    elif system == "scarf":
        p = ScarfParams.dimensionless(params["v0"], params["vplus"], params["vminus"])
    else:
        return morse_bound_levels(MorseParams.dimensionless(params["u1"], nu=params["nu"]))[:levels]
    return eigendecompose(system_matrix(p, N)).eigenvalues[:levels]


def cmd_sweep(args, config, options) -> ResultTable:
    system = pick(args, config, "system", "well")
    if system not in SWEEPABLE:
        raise DomainError(f"cannot sweep system {system!r}")
    parameter = pick(args, config, "parameter", next(iter(SWEEPABLE[system]))).lower()
    if parameter not in SWEEPABLE[system]:
        raise DomainError(f"{system} has no sweepable parameter {parameter!r}; choose from {sorted(SWEEPABLE[system])}")

    fixed = {name: pick(args, config, name, default, float) for name, default in SWEEPABLE[system].items()}
    range_text = pick(args, config, "range", None)
    values = parse_range(range_text) if range_text else parse_list(pick(args, config, "values", ""))
    N = pick(args, config, "basis_size", get_settings().basis_size, int)
    levels = pick(args, config, "levels", 10, int)
    workers = pick(args, config, "workers", get_settings().sweep_workers, int)

    logger.info("sweeping %s over %d values with %d workers", parameter, len(values), workers)
    task = partial(sweep_point, system, fixed, parameter, N=N, levels=levels)
    # map keeps input order whatever order the points finish in
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        results = list(pool.map(task, values))

    rows = [[value, k, float(eps)] for value, levels_at in zip(values, results) for k, eps in enumerate(levels_at)]
    return ResultTable(
        columns=["parameter", "level", "eps"],
        rows=rows,
        parameters={"system": system, "parameter": parameter, "values": values, "levels": levels, **fixed},
        basis_size=None if system == "morse" else N,
    )


def register(subparsers, parents) -> None:
    sweep = subparsers.add_parser("sweep", parents=parents, help="levels over a parameter range")
    sweep.add_argument("--system", choices=sorted(SWEEPABLE))
    sweep.add_argument("--parameter", help="gamma (well); v0, vplus, vminus (scarf); u1, nu (morse)")
    sweep.add_argument("--values", help="comma-separated parameter values")
    sweep.add_argument("--range", help="START:STOP:COUNT")
    sweep.add_argument("--levels", type=int)
    sweep.add_argument("--basis-size", dest="basis_size", type=int)
    sweep.add_argument("--workers", type=int)
    for name in sorted({n for defaults in SWEEPABLE.values() for n in defaults}):
        sweep.add_argument(f"--{name}", type=float)
    sweep.set_defaults(handler=cmd_sweep)
