"""
Tridiagonal wave-operator matrices and energy recursions for the four systems.
All matrices are in units of lambda^2/2, so their eigenvalues are eps = 2E/lambda^2.
"""

import logging
import math
from functools import singledispatch

import numpy as np

from errors import DomainError, InconsistentBasisError
from schemas import (
    BasisReport,
    CoulombParams,
    MorseParams,
    RecurrenceSpec,
    ScarfParams,
    SymTridiag,
    WellParams,
)
from settings import get_settings

logger = logging.getLogger(__name__)


def _check_size(N: int) -> None:
    limit = get_settings().max_basis_size
    if N < 1 or N > limit:
        raise DomainError(f"basis size {N} outside [1, {limit}]")


# Sinusoidal-bottom well

def well_matrix(p: WellParams, N: int) -> SymTridiag:
    _check_size(N)
    n = np.arange(N, dtype=np.float64)
    return SymTridiag(diag=(n + 1) ** 2, off=np.full(N - 1, p.gamma / 2))


def well_recurrence(p: WellParams) -> RecurrenceSpec:
    half_gamma = p.gamma / 2
    return RecurrenceSpec(
        a=lambda n: float((n + 1) ** 2),
        b=lambda n: half_gamma,
        family_label=f"well(gamma={p.gamma:g})",
    )


# Generalized trigonometric Scarf

def _scarf_c(n, mu: float, nu: float):
    if nu * nu == mu * mu:
        return np.zeros_like(np.asarray(n, dtype=np.float64))
    s = 2 * np.asarray(n, dtype=np.float64) + mu + nu
    return (nu * nu - mu * mu) / (s * (s + 2))


def _scarf_d(n, mu: float, nu: float):
    n = np.asarray(n, dtype=np.float64)
    s = 2 * n + mu + nu
    ratio = (n + 1) * (n + mu + 1) * (n + nu + 1) * (n + mu + nu + 1) / ((s + 1) * (s + 3))
    return 2 / (s + 2) * np.sqrt(ratio)


def scarf_matrix(p: ScarfParams, N: int) -> SymTridiag:
    """diag (n + (mu+nu+1)/2)^2 + U0 C_n, off U0 D_n; the first row has no D_{-1} term"""
    _check_size(N)
    mu, nu, u0 = p.mu, p.nu, p.U0
    n = np.arange(N, dtype=np.float64)
    diag = (n + (mu + nu + 1) / 2) ** 2 + u0 * _scarf_c(n, mu, nu)
    off = u0 * _scarf_d(n[:-1], mu, nu)
    logger.debug("scarf matrix N=%d mu=%.6f nu=%.6f U0=%.6f", N, mu, nu, u0)
    return SymTridiag(diag=diag, off=off)


def scarf_recurrence(p: ScarfParams) -> RecurrenceSpec:
    mu, nu, u0 = p.mu, p.nu, p.U0
    return RecurrenceSpec(
        a=lambda n: float((n + (mu + nu + 1) / 2) ** 2 + u0 * _scarf_c(n, mu, nu)),
        b=lambda n: float(u0 * _scarf_d(n, mu, nu)),
        family_label=f"scarf(U0={u0:g}, mu={mu:g}, nu={nu:g})",
    )


# Coulomb

def coulomb_argument(p: CoulombParams) -> float:
    """Spectral point z = -2 gamma_c / (eps + 1/4)"""
    return -2 * p.gamma_c / (p.eps + 0.25)


def coulomb_recurrence(p: CoulombParams) -> RecurrenceSpec:
    """Energy recursion at fixed E; evaluate at coulomb_argument(p)"""
    eps, ell = p.eps, p.ell
    ratio = (eps - 0.25) / (eps + 0.25)
    return RecurrenceSpec(
        a=lambda n: -2 * (n + ell + 1) * ratio,
        b=lambda n: math.sqrt((n + 1) * (n + 2 * ell + 2)),
        family_label=f"coulomb(Z={p.Z:g}, l={ell}, E={p.E:g})",
    )


# Morse

def _morse_diag(n, nu: float, u1: float):
    n = np.asarray(n, dtype=np.float64)
    return (2 * n + nu + 1) * (n + (nu + 1) / 2 + u1) - (nu * nu - 1) / 4


def _morse_off(n, nu: float, u1: float):
    n = np.asarray(n, dtype=np.float64)
    return -(n + 1 + nu / 2 + u1) * np.sqrt((n + 1) * (n + nu + 1))


def morse_matrix(p: MorseParams, N: int) -> SymTridiag:
    """Off-diagonal keeps its negative sign"""
    if not p.nu > -1:
        raise DomainError(f"basis parameter nu = {p.nu} must exceed -1", constraint="nu > -1")
    _check_size(N)
    n = np.arange(N, dtype=np.float64)
    return SymTridiag(diag=_morse_diag(n, p.nu, p.U1), off=_morse_off(n[:-1], p.nu, p.U1))


def morse_recurrence(p: MorseParams) -> RecurrenceSpec:
    """Orthonormal basis, so z = eps and c_n = 1"""
    nu, u1 = p.nu, p.U1
    return RecurrenceSpec(
        a=lambda n: float(_morse_diag(n, nu, u1)),
        b=lambda n: float(_morse_off(n, nu, u1)),
        family_label=f"morse(U1={u1:g}, nu={nu:g})",
    )


# Dispatch over the tagged union

@singledispatch
def system_matrix(system, N: int) -> SymTridiag:
    raise DomainError(f"{type(system).__name__} has no bound-state matrix")


@system_matrix.register
def _(system: WellParams, N: int) -> SymTridiag:
    return well_matrix(system, N)


@system_matrix.register
def _(system: ScarfParams, N: int) -> SymTridiag:
    return scarf_matrix(system, N)


@system_matrix.register
def _(system: MorseParams, N: int) -> SymTridiag:
    return morse_matrix(system, N)


# Basis selection

@singledispatch
def validate_basis_choice(system) -> BasisReport:
    """Classical family and exponents the configuration forces; rejects conflicting declarations"""
    raise DomainError(f"no basis is known for {type(system).__name__}")


@validate_basis_choice.register
def _(system: CoulombParams) -> BasisReport:
    nu, alpha = 2 * system.ell + 1, system.ell + 1
    if system.nu is not None and system.nu != nu:
        raise InconsistentBasisError(
            f"Laguerre index nu = {system.nu} but l = {system.ell} requires nu = {nu}",
            constraint="nu = 2l + 1",
        )
    if system.alpha is not None and 2 * system.alpha != nu + 1:
        raise InconsistentBasisError(
            f"exponent alpha = {system.alpha} does not satisfy 2 alpha = nu + 1",
            constraint="2 alpha = nu + 1",
        )
    return BasisReport(
        system="coulomb",
        family="laguerre",
        exponents={"nu": nu, "alpha": alpha},
        constraints=["2 alpha = nu + 1", "nu = 2l + 1"],
    )


@validate_basis_choice.register
def _(system: WellParams) -> BasisReport:
    if system.alpha is not None and system.alpha != 0.5:
        raise InconsistentBasisError(
            f"exponent alpha = {system.alpha} but the Chebyshev basis needs alpha = 1/2",
            constraint="alpha = 1/2",
        )
    return BasisReport(
        system="well",
        family="chebyshev_u",
        exponents={"alpha": 0.5},
        constraints=["alpha = 1/2"],
    )


@validate_basis_choice.register
def _(system: ScarfParams) -> BasisReport:
    return BasisReport(
        system="scarf",
        family="jacobi",
        exponents={"mu": system.mu, "nu": system.nu, "p": 0.0, "q": 0.0},
        constraints=["(p, q) = (0, 0)", "V+ >= |V-| - lambda^2/8"],
    )


@validate_basis_choice.register
def _(system: MorseParams) -> BasisReport:
    if abs(system.U2 - 0.25) > 1e-12:
        raise InconsistentBasisError(
            f"U2 = {system.U2} but the positive-energy Laguerre basis fixes U2 = 1/4",
            constraint="U2 = 1/4 (V2 = lambda^2/8)",
        )
    return BasisReport(
        system="morse",
        family="laguerre",
        exponents={"nu": system.nu, "alpha": (system.nu + 1) / 2},
        constraints=["U2 = 1/4", "2 alpha = nu + 1", "nu > -1"],
    )
