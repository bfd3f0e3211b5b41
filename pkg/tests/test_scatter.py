import math

import mpmath
import numpy as np
import pytest

from errors import DomainError, FitFailureError, PoleError
from schemas import AsymptoticModel, CoulombParams, MorseParams, PolySequence, wrap_phase
from solver.scatter import (
    arg_gamma,
    coulomb_phase,
    coulomb_phase_from_sequence,
    coulomb_phase_shift,
    extract_phase,
    log_gamma,
    log_gamma_complex,
    morse_asymptotic_model,
    morse_bound_energies,
    morse_phase_shift,
    morse_phase_terms,
    morse_sequence,
)


def _mp_arg_gamma(re, im):
    return float(mpmath.im(mpmath.loggamma(mpmath.mpc(re, im))))


def _same_angle(a, b, period=2 * math.pi, tol=1e-10):
    return abs(math.remainder(a - b, period)) < tol


def test_log_gamma_at_one():
    log_abs, arg = log_gamma_complex(1.0, 0.0)
    assert log_abs == pytest.approx(0.0, abs=1e-14)
    assert arg == pytest.approx(0.0, abs=1e-14)


def test_log_gamma_at_half():
    log_abs, arg = log_gamma_complex(0.5, 0.0)
    assert log_abs == pytest.approx(0.5 * math.log(math.pi), abs=1e-13)
    assert arg == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize(
    "z",
    [1 + 1j, 0.5 + 3j, 2.5 - 7j, 20 + 0.1j, 0.1 + 0.2j, -3.7 + 0.5j, -0.5 - 2j, 0.01 + 40j, 30 - 30j, -10.2 + 4j],
)
def test_log_gamma_matches_mpmath(z):
    expected = complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))
    value = log_gamma(z)
    scale = max(1.0, abs(expected))
    assert abs(value.real - expected.real) < 1e-12 * scale
    assert abs(value.imag - expected.imag) < 1e-12 * scale


def test_log_gamma_recurrence():
    z = 0.3 + 1.7j
    assert log_gamma(z + 1) == pytest.approx(log_gamma(z) + np.log(z), abs=1e-12)


@pytest.mark.parametrize("re", [0.0, -1.0, -4.0])
def test_log_gamma_poles(re):
    with pytest.raises(PoleError):
        log_gamma_complex(re, 0.0)


def test_coulomb_phase_unit_eta(coulomb_unit):
    shift = coulomb_phase_shift(coulomb_unit)
    assert shift.modulo_note == "modulo_half_pi"
    assert _same_angle(shift.delta, _mp_arg_gamma(1.0, -1.0))


def test_coulomb_phase_in_principal_range():
    for eta in (0.1, 1.0, 5.0, 40.0):
        assert -math.pi < coulomb_phase(0, eta) <= math.pi


def test_coulomb_phase_ell_step():
    eta = 1.3
    step = coulomb_phase(1, eta) - coulomb_phase(0, eta)
    assert _same_angle(step, math.atan2(-eta, 1.0))


def test_coulomb_phase_odd_in_charge():
    for ell, eta in [(0, 0.7), (2, 3.1)]:
        assert coulomb_phase(ell, -eta) == pytest.approx(-coulomb_phase(ell, eta), abs=1e-12)


def test_coulomb_phase_vanishes_without_charge():
    p = CoulombParams(Z=1e-12, ell=3, E=2.0)
    assert coulomb_phase_shift(p).delta == pytest.approx(0.0, abs=1e-10)


def test_coulomb_phase_from_tail(coulomb_unit):
    """Tail fit agrees with arg Gamma(l + 1 - i Z/kappa) up to multiples of pi/2"""
    from_tail = coulomb_phase_from_sequence(coulomb_unit).delta
    closed = coulomb_phase_shift(coulomb_unit).delta
    assert abs(math.remainder(from_tail - closed, math.pi / 2)) < 2e-3


def test_morse_bound_energies(morse4):
    result = morse_bound_energies(morse4)
    assert result.units == "physical"
    np.testing.assert_allclose(result.eigenvalues, [-6.125, -3.125, -1.125, -0.125], atol=1e-14)
    assert np.all(np.diff(result.eigenvalues) > 0)
    assert np.all(result.eigenvalues < 0)


def test_morse_without_well_has_no_bound_states():
    assert len(morse_bound_energies(MorseParams(lam=1.0, V1=0.0))) == 0


def test_morse_single_bound_state():
    result = morse_bound_energies(MorseParams(lam=2.0, V1=-2.0))
    np.testing.assert_allclose(result.eigenvalues, [-0.5], atol=1e-14)


def test_morse_phase_terms(morse4):
    E = 0.5
    k = math.sqrt(2 * E) / morse4.lam
    t_free, t_pot, t_basis = morse_phase_terms(morse4, E)
    assert t_free == pytest.approx(arg_gamma(0.0, 2 * k))
    assert _same_angle(t_free, _mp_arg_gamma(0.0, 2 * k))
    assert _same_angle(t_pot, _mp_arg_gamma(0.5 + morse4.U1, k))
    assert _same_angle(t_basis, _mp_arg_gamma((morse4.nu + 1) / 2, k))


def test_morse_phase_shift(morse4):
    E = 0.5
    k = math.sqrt(2 * E)
    expected = _mp_arg_gamma(0.0, 2 * k) - _mp_arg_gamma(-3.5, k) - 2 * _mp_arg_gamma(1.0, k)
    shift = morse_phase_shift(morse4, E)
    assert shift.modulo_note == "exact"
    assert _same_angle(shift.delta, expected, tol=1e-9)


def test_morse_phase_basis_dependence():
    E = 1.2
    k = math.sqrt(2 * E)
    one = morse_phase_shift(MorseParams(lam=1.0, V1=-2.0, nu=1.0), E).delta
    two = morse_phase_shift(MorseParams(lam=1.0, V1=-2.0, nu=3.0), E).delta
    expected = -2 * (_mp_arg_gamma(2.0, k) - _mp_arg_gamma(1.0, k))
    assert _same_angle(two - one, expected, tol=1e-9)


def test_morse_phase_needs_positive_energy(morse4):
    with pytest.raises(DomainError):
        morse_phase_shift(morse4, 0.0)


def _sequence(values):
    values = np.asarray(values, dtype=float)
    values[0] = 1.0
    return PolySequence(z=0.0, values=values)


def test_extract_phase_recovers_frequency():
    n = np.arange(200, dtype=float)
    seq = _sequence(np.cos(0.7 * n + 0.3))
    fit = extract_phase(seq, AsymptoticModel(active="theta", tau=0.0, phi=0.0))
    assert fit.theta == pytest.approx(0.7, abs=1e-6)
    assert fit.delta_est == pytest.approx(0.3, abs=1e-6)
    assert fit.amplitude_envelope == pytest.approx(1.0, abs=1e-6)
    assert fit.residual < 1e-8


def test_extract_phase_log_frequency():
    m = np.arange(300, dtype=float)
    m[0] = 1.0  # placeholder, values[0] is reset to 1
    seq = _sequence(2.0 * m**-0.5 * np.cos(1.3 * np.log(m) + 0.4))
    fit = extract_phase(seq, AsymptoticModel(active="phi", tau=0.5, theta=0.0, phi_guess=1.2))
    assert fit.phi == pytest.approx(1.3, abs=1e-6)
    assert fit.delta_est == pytest.approx(0.4, abs=1e-6)
    assert fit.amplitude_envelope == pytest.approx(2.0, abs=1e-6)


def test_extract_phase_needs_long_sequence():
    with pytest.raises(DomainError):
        extract_phase(_sequence(np.ones(20)), AsymptoticModel(active="theta", theta=0.5))


def test_extract_phase_rejects_noise(rng):
    seq = _sequence(rng.normal(size=200))
    with pytest.raises(FitFailureError):
        extract_phase(seq, AsymptoticModel(active="theta", theta=0.7, phi=0.0))


def test_asymptotic_model_phi_mode_needs_phi():
    with pytest.raises(ValueError):
        AsymptoticModel(active="phi", tau=0.5)


def test_morse_tail_has_log_periodic_form(morse4):
    E = 0.5
    seq = morse_sequence(morse4, E, 400)
    fit = extract_phase(seq, morse_asymptotic_model(morse4, E))
    assert fit.theta == 0.0
    assert fit.residual < 1e-2


def test_morse_tail_log_frequency(morse4):
    E = 0.5
    seq = morse_sequence(morse4, E, 400)
    fit = extract_phase(seq, morse_asymptotic_model(morse4, E, fit_phi=True))
    assert fit.phi == pytest.approx(math.sqrt(2 * E) / morse4.lam, abs=5e-2)


def test_wrap_phase():
    assert wrap_phase(math.pi) == pytest.approx(math.pi)
    assert wrap_phase(-math.pi) == pytest.approx(math.pi)
    assert wrap_phase(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
