"""
Single-system commands: well and Scarf spectra, Coulomb and Morse phase shifts
"""

import logging

from cli.output import ResultTable, parse_list, pick
from errors import TRAError
from schemas import CoulombParams, MorseParams, ScarfParams, WellParams
from settings import get_settings
from solver.eig import eigendecompose
from solver.scatter import (
    coulomb_phase_from_sequence,
    coulomb_phase_shift,
    morse_bound_energies,
    morse_phase_shift,
)
from solver.wavop import scarf_matrix, validate_basis_choice, well_matrix

logger = logging.getLogger(__name__)


def _spectrum_rows(values, unit, levels, options):
    scale = unit if options.units == "physical" else 1.0
    return [[n, float(values[n] * scale)] for n in range(min(levels, len(values)))]


def cmd_well(args, config, options) -> ResultTable:
    gamma = pick(args, config, "gamma", 0.0, float)
    L = pick(args, config, "L", 1.0, float)
    N = pick(args, config, "basis_size", get_settings().basis_size, int)
    levels = pick(args, config, "levels", 10, int)
    p = WellParams.dimensionless(gamma, L=L)
    validate_basis_choice(p)
    values = eigendecompose(well_matrix(p, N)).eigenvalues
    return ResultTable(
        columns=["n", "energy"],
        rows=_spectrum_rows(values, p.energy_unit, levels, options),
        parameters={"gamma": gamma, "L": L, "levels": levels},
        basis_size=N,
    )


def cmd_scarf(args, config, options) -> ResultTable:
    v0 = pick(args, config, "v0", 7.0, float)
    vplus = pick(args, config, "vplus", 5.0, float)
    vminus = pick(args, config, "vminus", 3.0, float)
    L = pick(args, config, "L", 1.0, float)
    N = pick(args, config, "basis_size", get_settings().basis_size, int)
    levels = pick(args, config, "levels", 10, int)
    p = ScarfParams.dimensionless(v0, vplus, vminus, L=L)
    values = eigendecompose(scarf_matrix(p, N)).eigenvalues
    return ResultTable(
        columns=["n", "energy"],
        rows=_spectrum_rows(values, p.energy_unit, levels, options),
        parameters={"V0": v0, "V+": vplus, "V-": vminus, "L": L, "mu": p.mu, "nu": p.nu},
        basis_size=N,
    )


def cmd_coulomb(args, config, options) -> ResultTable:
    """Closed-form phase shift next to the one read off the polynomial tail"""
    Z = pick(args, config, "Z", 1.0, float)
    ell = pick(args, config, "ell", 0, int)
    lam = pick(args, config, "lam", 1.0, float)
    energies = parse_list(pick(args, config, "energies", "0.5"))
    rows = []
    failed = []
    for E in energies:
        p = CoulombParams(Z=Z, ell=ell, lam=lam, E=E)
        validate_basis_choice(p)
        try:
            from_tail = coulomb_phase_from_sequence(p).delta
            note = "modulo pi/2"
        except TRAError as exc:
            logger.error("tail fit failed at E=%g: %s", E, exc)
            from_tail, note = None, f"tail fit failed: {exc}"
            failed.append(E)
        rows.append([E, coulomb_phase_shift(p).delta, from_tail, note])
    table = ResultTable(
        columns=["E", "delta", "delta_tail_fit", "note"],
        rows=rows,
        parameters={"Z": Z, "ell": ell, "lam": lam, "energies": energies},
    )
    if failed:
        table.failure = "tail fit failed at E = " + ", ".join(f"{E:g}" for E in failed)
        table.exit_code = 3
    return table


def cmd_morse(args, config, options) -> ResultTable:
    """Bound energies first, then phase shifts; energies are physical"""
    lam = pick(args, config, "lam", 1.0, float)
    V1 = pick(args, config, "V1", -2.0, float)
    nu = pick(args, config, "nu", get_settings().morse_nu, float)
    energies = parse_list(pick(args, config, "energies", "0.5"))
    p = MorseParams(lam=lam, V1=V1, nu=nu)
    validate_basis_choice(p)

    rows = []
    bound = morse_bound_energies(p).eigenvalues
    if len(bound) == 0:
        rows.append(["bound", None, None, None, "no bound states"])
    for k, E in enumerate(bound):
        rows.append(["bound", k, float(E), None, ""])
    for E in energies:
        rows.append(["scattering", None, E, morse_phase_shift(p, E).delta, ""])
    return ResultTable(
        columns=["kind", "k", "energy", "delta", "note"],
        rows=rows,
        parameters={"lam": lam, "V1": V1, "nu": nu, "U1": p.U1, "energies": energies},
    )


def register(subparsers, parents) -> None:
    well = subparsers.add_parser("well", parents=parents, help="sinusoidal-bottom well spectrum")
    well.add_argument("--gamma", type=float, help="2 V0 / lambda^2")
    well.add_argument("--L", dest="L", type=float)
    well.add_argument("--basis-size", dest="basis_size", type=int)
    well.add_argument("--levels", type=int)
    well.set_defaults(handler=cmd_well)

    scarf = subparsers.add_parser("scarf", parents=parents, help="generalized Scarf well spectrum")
    scarf.add_argument("--v0", type=float)
    scarf.add_argument("--vplus", type=float)
    scarf.add_argument("--vminus", type=float)
    scarf.add_argument("--L", dest="L", type=float)
    scarf.add_argument("--basis-size", dest="basis_size", type=int)
    scarf.add_argument("--levels", type=int)
    scarf.set_defaults(handler=cmd_scarf)

    coulomb = subparsers.add_parser("coulomb", parents=parents, help="Coulomb phase shifts")
    coulomb.add_argument("--Z", dest="Z", type=float)
    coulomb.add_argument("--ell", type=int)
    coulomb.add_argument("--lam", type=float, help="basis scale lambda")
    coulomb.add_argument("--energies", help="comma-separated positive energies")
    coulomb.set_defaults(handler=cmd_coulomb)

    morse = subparsers.add_parser("morse", parents=parents, help="Morse bound energies and phase shifts")
    morse.add_argument("--lam", type=float)
    morse.add_argument("--V1", dest="V1", type=float)
    morse.add_argument("--nu", type=float, help="free basis parameter (> -1)")
    morse.add_argument("--energies", help="comma-separated positive energies")
    morse.set_defaults(handler=cmd_morse)
