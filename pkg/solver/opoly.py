"""
Orthogonal polynomials by forward three-term recursion
"""

import logging
import math

import numpy as np
from scipy.special import gammaln

from errors import DomainError, InvalidRecurrenceError
from schemas import PolySequence, RecurrenceSpec

logger = logging.getLogger(__name__)


def check_coefficients(rec: RecurrenceSpec, n: int) -> None:
    b = rec.b(n)
    if not b * b > 0:
        raise InvalidRecurrenceError(
            f"{rec.family_label}: b_{n} = {b} gives b_n^2 <= 0", constraint="b_n^2 > 0"
        )
    if rec.c(n) == 0:
        raise InvalidRecurrenceError(f"{rec.family_label}: c_{n} = 0", constraint="c_n != 0")


def eval_recursion(rec: RecurrenceSpec, z: float, n_max: int) -> PolySequence:
    """P_0(z)..P_{n_max}(z) from P_0 = 1 and the recursion run forward"""
    if n_max < 0:
        raise DomainError(f"n_max = {n_max} must be nonnegative")
    values = np.empty(n_max + 1)
    values[0] = 1.0
    prev, b_prev = 0.0, 0.0
    for n in range(n_max):
        check_coefficients(rec, n)
        b_n = rec.b(n)
        values[n + 1] = ((z * rec.c(n) - rec.a(n)) * values[n] - b_prev * prev) / b_n
        prev, b_prev = values[n], b_n
    return PolySequence(z=z, values=values)


# Classical families

def laguerre_table(n_max: int, nu: float, y) -> np.ndarray:
    """L_0^nu(y)..L_{n_max}^nu(y), shape (n_max + 1, len(y))"""
    if not nu > -1:
        raise DomainError(f"Laguerre parameter nu = {nu} must exceed -1", constraint="nu > -1")
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    out = np.empty((n_max + 1, y.size))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = nu + 1 - y
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + nu + 1 - y) * out[k] - (k + nu) * out[k - 1]) / (k + 1)
    return out


def laguerre_normalized_table(n_max: int, nu: float, y) -> np.ndarray:
    """A_n L_n^nu(y) with A_n = sqrt(n! / Gamma(n + nu + 1)), recursed directly to avoid overflow"""
    if not nu > -1:
        raise DomainError(f"Laguerre parameter nu = {nu} must exceed -1", constraint="nu > -1")
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    out = np.empty((n_max + 1, y.size))
    out[0] = norm_laguerre(0, nu)
    if n_max >= 1:
        out[1] = (nu + 1 - y) * out[0] / math.sqrt(nu + 1)
    for k in range(1, n_max):
        out[k + 1] = (
            (2 * k + nu + 1 - y) * out[k] - math.sqrt(k * (k + nu)) * out[k - 1]
        ) / math.sqrt((k + 1) * (k + nu + 1))
    return out


def laguerre(n: int, nu: float, y: float) -> float:
    return float(laguerre_table(n, nu, y)[n, 0])


def chebyshev_u_table(n_max: int, y) -> np.ndarray:
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    out = np.empty((n_max + 1, y.size))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2 * y
    for k in range(1, n_max):
        out[k + 1] = 2 * y * out[k] - out[k - 1]
    return out


def chebyshev_u(n: int, y: float) -> float:
    return float(chebyshev_u_table(n, y)[n, 0])


def jacobi_table(n_max: int, mu: float, nu: float, y) -> np.ndarray:
    """P_n^{(mu, nu)}(y) for n = 0..n_max"""
    if not (mu > -1 and nu > -1):
        raise DomainError(
            f"Jacobi parameters ({mu}, {nu}) must both exceed -1", constraint="mu, nu > -1"
        )
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    out = np.empty((n_max + 1, y.size))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = ((mu + nu + 2) * y + (mu - nu)) / 2
    s = mu + nu
    for k in range(1, n_max):
        c = 2 * k + s
        lead = 2 * (k + 1) * (k + s + 1) * c
        out[k + 1] = (
            (c + 1) * ((c + 2) * c * y + mu * mu - nu * nu) * out[k]
            - 2 * (k + mu) * (k + nu) * (c + 2) * out[k - 1]
        ) / lead
    return out


def jacobi(n: int, mu: float, nu: float, y: float) -> float:
    return float(jacobi_table(n, mu, nu, y)[n, 0])


# Normalization constants

def norm_laguerre(n: int, nu: float) -> float:
    """sqrt(Gamma(n+1) / Gamma(n+nu+1))"""
    if not nu > -1:
        raise DomainError(f"Laguerre parameter nu = {nu} must exceed -1", constraint="nu > -1")
    return math.exp(0.5 * (gammaln(n + 1) - gammaln(n + nu + 1)))


def norm_jacobi(n: int, mu: float, nu: float) -> float:
    if not (mu > -1 and nu > -1):
        raise DomainError(
            f"Jacobi parameters ({mu}, {nu}) must both exceed -1", constraint="mu, nu > -1"
        )
    s = mu + nu
    if n == 0:
        # (s+1) Gamma(s+1) = Gamma(s+2) also covers s = -1
        log_top = gammaln(s + 2)
    else:
        log_top = math.log(2 * n + s + 1) + gammaln(n + s + 1)
    log_a2 = (
        log_top
        - (s + 1) * math.log(2)
        + gammaln(n + 1)
        - gammaln(n + mu + 1)
        - gammaln(n + nu + 1)
    )
    return math.exp(0.5 * log_a2)


def norm_chebyshev() -> float:
    return math.sqrt(2 / math.pi)
