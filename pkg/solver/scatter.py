"""
Phase shifts, Morse bound spectrum, complex log-gamma and asymptotic phase fits
"""

import cmath
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import least_squares

from errors import DomainError, FitFailureError, PoleError
from schemas import (
    AsymptoticFit,
    AsymptoticModel,
    CoulombParams,
    MorseParams,
    PhaseShift,
    PolySequence,
    SpectrumResult,
    wrap_phase,
)
from settings import get_settings
from solver.opoly import eval_recursion
from solver.wavop import coulomb_argument, coulomb_recurrence, morse_recurrence

logger = logging.getLogger(__name__)

# Lanczos approximation, g = 7, n = 9
LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _lanczos_log(z: complex) -> complex:
    """log Gamma(z) for Re z >= 1/2"""
    z -= 1
    x = LANCZOS_COEFFS[0]
    for i, c in enumerate(LANCZOS_COEFFS[1:], start=1):
        x += c / (z + i)
    t = z + LANCZOS_G + 0.5
    return HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z)"""
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}", constraint="argument not a nonpositive integer")
    if z.real >= 0.5:
        return _lanczos_log(z)
    # shift right with log Gamma(z) = log Gamma(z + m) - sum log(z + j), which keeps the principal branch
    m = math.ceil(0.5 - z.real)
    shift = sum(cmath.log(z + j) for j in range(m))
    return _lanczos_log(z + m) - shift


def log_gamma_complex(re: float, im: float) -> Tuple[float, float]:
    """(log |Gamma(z)|, continuous arg Gamma(z)) at z = re + i im"""
    value = log_gamma(complex(re, im))
    return value.real, value.imag


def arg_gamma(re: float, im: float) -> float:
    return log_gamma_complex(re, im)[1]


# Coulomb

def coulomb_phase(ell: int, eta: float) -> float:
    """arg Gamma(l + 1 - i eta) in (-pi, pi]"""
    return wrap_phase(arg_gamma(ell + 1, -eta))


def coulomb_phase_shift(p: CoulombParams) -> PhaseShift:
    return PhaseShift(delta=coulomb_phase(p.ell, p.eta), modulo_note="modulo_half_pi")


def coulomb_theta(p: CoulombParams) -> float:
    return math.acos((p.eps - 0.25) / (p.eps + 0.25))


def coulomb_asymptotic_model(
    p: CoulombParams, window: Tuple[int, int] = (60, 200), correction_order: int = 2
) -> AsymptoticModel:
    """n^{-1/2} A cos(n theta + (Z/kappa) log n + delta) with theta, phi known"""
    return AsymptoticModel(
        active="theta",
        tau=0.5,
        theta=coulomb_theta(p),
        phi=p.eta,
        window=window,
        correction_order=correction_order,
    )


def coulomb_reference_phase(p: CoulombParams) -> float:
    """Basis-dependent part of the fitted constant: (Z/kappa) log(2 sin theta) - (l+1)(pi/2 - theta)"""
    theta = coulomb_theta(p)
    return p.eta * math.log(2 * math.sin(theta)) - (p.ell + 1) * (math.pi / 2 - theta)


def coulomb_phase_from_sequence(
    p: CoulombParams, n_max: int = 200, window: Tuple[int, int] = (60, 200)
) -> PhaseShift:
    """Phase shift read off the tail of the energy polynomials"""
    seq = eval_recursion(coulomb_recurrence(p), coulomb_argument(p), n_max)
    fit = extract_phase(seq, coulomb_asymptotic_model(p, window=window))
    return PhaseShift(delta=fit.delta_est - coulomb_reference_phase(p), modulo_note="modulo_half_pi")


# Morse

def morse_bound_levels(p: MorseParams) -> np.ndarray:
    """eps_k = -(k + 1/2 + U1)^2 for k = 0..N_b"""
    k = np.arange(p.bound_state_count, dtype=np.float64)
    return -((k + 0.5 + p.U1) ** 2)


def morse_bound_energies(p: MorseParams) -> SpectrumResult:
    """Closed-form bound energies, physical units, empty when U1 >= -1/2"""
    return SpectrumResult(eigenvalues=morse_bound_levels(p) * p.energy_unit, units="physical")


def morse_phase_terms(p: MorseParams, E: float) -> Tuple[float, float, float]:
    if not E > 0:
        raise DomainError(f"scattering energy E = {E} must be positive", constraint="E > 0")
    k = math.sqrt(2 * E) / p.lam
    return (
        arg_gamma(0.0, 2 * k),
        arg_gamma(0.5 + p.U1, k),
        arg_gamma((p.nu + 1) / 2, k),
    )


def morse_phase_shift(p: MorseParams, E: float) -> PhaseShift:
    """arg G(2ik) - arg G(1/2 + U1 + ik) - 2 arg G((nu+1)/2 + ik), k = kappa/lambda"""
    t_free, t_pot, t_basis = morse_phase_terms(p, E)
    return PhaseShift(delta=t_free - t_pot - 2 * t_basis, modulo_note="exact")


def morse_asymptotic_model(
    p: MorseParams,
    E: float,
    window: Optional[Tuple[int, int]] = None,
    fit_phi: bool = False,
    correction_order: int = 2,
) -> AsymptoticModel:
    """theta = 0 and log-frequency sqrt(eps)"""
    phi = math.sqrt(2 * E) / p.lam
    return AsymptoticModel(
        active="phi",
        tau=0.5,
        theta=0.0,
        phi=None if fit_phi else phi,
        phi_guess=phi,
        window=window,
        correction_order=correction_order,
    )


def morse_sequence(p: MorseParams, E: float, n_max: int) -> PolySequence:
    return eval_recursion(morse_recurrence(p), 2 * E / p.lam**2, n_max)


# Asymptotic fits

def _design(n: np.ndarray, phase: np.ndarray, order: int) -> np.ndarray:
    cols = []
    for k in range(order + 1):
        scale = n ** (-float(k))
        cols.extend((np.cos(phase) * scale, np.sin(phase) * scale))
    return np.column_stack(cols)


def _project(n, y, phase, order):
    basis = _design(n, phase, order)
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    return coef, y - basis @ coef


def extract_phase(seq: PolySequence, model: AsymptoticModel) -> AsymptoticFit:
    """
    Least-squares fit of n^{-tau} A cos(n^xi theta + phi log n + delta) over a tail window.
    Amplitude and delta enter linearly; a free theta or phi is found by variable projection.
    """
    if len(seq.values) < 40:
        raise DomainError(f"sequence of length {len(seq.values)} is too short for a tail fit")
    n_last = seq.n_max
    n0, n1 = model.window or (n_last // 2, n_last)
    n0 = max(n0, 1)
    if n1 > n_last or n1 - n0 < 2 * (model.correction_order + 1) + 2:
        raise DomainError(f"fit window [{n0}, {n1}] does not fit sequence of length {n_last + 1}")

    n = np.arange(n0, n1 + 1, dtype=np.float64)
    y = seq.values[n0 : n1 + 1] * n**model.tau
    log_n = np.log(n)
    order = model.correction_order
    xi = model.xi if model.active == "theta" else 1.0

    def phase_of(theta: float, phi: float) -> np.ndarray:
        return n**xi * theta + phi * log_n

    if model.active == "theta":
        phi = model.phi or 0.0
        theta = model.theta
        if theta is None:
            guess = model.theta_guess
            if guess is None:
                grid = np.linspace(1e-3, math.pi - 1e-3, 2000)
                guess = grid[int(np.argmin([np.sum(_project(n, y, phase_of(t, phi), order)[1] ** 2) for t in grid]))]
            sol = least_squares(
                lambda t: _project(n, y, phase_of(t[0], phi), order)[1],
                x0=[guess],
                xtol=1e-14,
                ftol=1e-14,
                gtol=1e-14,
            )
            theta = float(sol.x[0])
    else:
        theta = 0.0
        phi = model.phi
        if phi is None:
            sol = least_squares(
                lambda f: _project(n, y, phase_of(0.0, f[0]), order)[1],
                x0=[model.phi_guess],
                xtol=1e-14,
                ftol=1e-14,
                gtol=1e-14,
            )
            phi = float(sol.x[0])

    coef, resid = _project(n, y, phase_of(theta, phi), order)
    c, s = coef[0], coef[1]
    amplitude = math.hypot(c, s)
    delta = wrap_phase(math.atan2(-s, c))
    scale = float(np.sqrt(np.mean(y**2)))
    residual = float(np.sqrt(np.mean(resid**2)) / scale) if scale > 0 else math.inf
    logger.debug("tail fit on [%d, %d]: theta=%.6g phi=%.6g residual=%.3e", n0, n1, theta, phi, residual)

    tolerance = model.tolerance if model.tolerance is not None else get_settings().fit_tolerance
    if not residual <= tolerance:
        raise FitFailureError(f"asymptotic fit residual {residual:.3e} exceeds {tolerance:.3e}")
    return AsymptoticFit(
        amplitude_envelope=amplitude,
        tau=model.tau,
        xi=xi,
        theta=theta,
        phi=phi,
        delta_est=delta,
        residual=residual,
        window=(n0, n1),
    )
