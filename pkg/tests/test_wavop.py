import math

import numpy as np
import pytest
from pydantic import ValidationError

from errors import DomainError, InconsistentBasisError, NonFiniteInputError, RealityViolationError
from schemas import CoulombParams, MorseParams, ScarfParams, SymTridiag, WellParams
from solver.eig import eigendecompose
from solver.opoly import eval_recursion
from solver.wavop import (
    coulomb_argument,
    coulomb_recurrence,
    morse_matrix,
    morse_recurrence,
    scarf_matrix,
    scarf_recurrence,
    system_matrix,
    validate_basis_choice,
    well_matrix,
    well_recurrence,
)


def test_flat_well_matrix():
    T = well_matrix(WellParams.dimensionless(0.0), 3)
    assert T.diag.tolist() == [1.0, 4.0, 9.0]
    assert T.off.tolist() == [0.0, 0.0]


@pytest.mark.parametrize("gamma,lowest", [(5.0, -0.595539559), (2.0, 0.686720257)])
def test_well_lowest_level(gamma, lowest):
    T = well_matrix(WellParams.dimensionless(gamma), 50)
    assert eigendecompose(T).eigenvalues[0] == pytest.approx(lowest, abs=1e-8)


def test_well_units_round_trip():
    p = WellParams.dimensionless(5.0, L=2.0)
    assert p.lam == pytest.approx(math.pi / 2)
    assert p.gamma == pytest.approx(5.0)
    assert p.V0 == pytest.approx(5.0 * p.energy_unit)


def test_well_recurrence_matches_matrix():
    p = WellParams.dimensionless(3.0)
    rec = well_recurrence(p)
    T = well_matrix(p, 5)
    assert [rec.a(n) for n in range(5)] == T.diag.tolist()
    assert [rec.b(n) for n in range(4)] == T.off.tolist()


def test_scarf_derived_parameters(scarf753):
    assert scarf753.U0 == pytest.approx(7.0)
    assert scarf753.mu == pytest.approx(1.5)
    assert scarf753.nu == pytest.approx(2.872281323, abs=1e-9)


def test_scarf_lowest_level(scarf753):
    values = eigendecompose(scarf_matrix(scarf753, 100)).eigenvalues
    assert values[0] == pytest.approx(7.680625404, abs=1e-8)


def test_scarf_small_truncation(scarf753):
    values = eigendecompose(scarf_matrix(scarf753, 13)).eigenvalues
    assert values[9] == pytest.approx(136.683022596, abs=1e-8)


def test_scarf_without_sinusoid_is_diagonal():
    p = ScarfParams.dimensionless(0.0, 5.0, 3.0)
    T = scarf_matrix(p, 6)
    assert np.all(T.off == 0)
    n = np.arange(6)
    np.testing.assert_allclose(T.diag, (n + (p.mu + p.nu + 1) / 2) ** 2, rtol=1e-12)
    np.testing.assert_allclose(eigendecompose(T).eigenvalues, T.diag, rtol=1e-12)


def test_scarf_reduces_to_well():
    """V+ = V- = 0 gives mu = nu = 1/2 and the well matrix"""
    scarf = scarf_matrix(ScarfParams.dimensionless(5.0, 0.0, 0.0), 50)
    well = well_matrix(WellParams.dimensionless(5.0), 50)
    np.testing.assert_allclose(scarf.diag, well.diag, rtol=1e-12)
    np.testing.assert_allclose(scarf.off, well.off, rtol=1e-12)
    np.testing.assert_allclose(eigendecompose(scarf).eigenvalues, eigendecompose(well).eigenvalues, atol=1e-8)


def test_scarf_reality_violation():
    with pytest.raises(RealityViolationError):
        ScarfParams.dimensionless(7.0, 0.0, 3.0)


def test_scarf_reality_boundary_is_allowed():
    p = ScarfParams.dimensionless(1.0, 2.75, 3.0)
    assert p.mu == pytest.approx(0.0, abs=1e-6)


def test_scarf_recurrence_matches_matrix(scarf753):
    rec = scarf_recurrence(scarf753)
    T = scarf_matrix(scarf753, 8)
    np.testing.assert_allclose([rec.a(n) for n in range(8)], T.diag, rtol=1e-14)
    np.testing.assert_allclose([rec.b(n) for n in range(7)], T.off, rtol=1e-14)


def test_coulomb_first_terms():
    p = CoulombParams(Z=1.0, ell=1, lam=1.0, E=0.8)
    seq = eval_recursion(coulomb_recurrence(p), coulomb_argument(p), 3).values
    ratio = (p.eps - 0.25) / (p.eps + 0.25)
    expected = (-2 * p.gamma_c / (p.eps + 0.25) + 2 * (p.ell + 1) * ratio) / math.sqrt(2 * p.ell + 2)
    assert seq[0] == 1.0
    assert seq[1] == pytest.approx(expected, rel=1e-14)


def test_coulomb_params_derived(coulomb_unit):
    assert coulomb_unit.kappa == pytest.approx(1.0)
    assert coulomb_unit.eps == pytest.approx(1.0)
    assert coulomb_unit.eta == pytest.approx(1.0)


def test_coulomb_rejects_nonpositive_energy():
    with pytest.raises(ValidationError):
        CoulombParams(Z=1.0, E=0.0)


def test_morse_first_diagonal():
    T = morse_matrix(MorseParams.dimensionless(-4.0, nu=1.0), 3)
    assert T.diag[0] == pytest.approx(-6.0)
    # n + 1 + nu/2 + U1 < 0 for the first rows, so these off-diagonals come out positive
    assert T.off[0] == pytest.approx(2.5 * math.sqrt(2))
    assert T.off[1] == pytest.approx(1.5 * math.sqrt(6))


def test_morse_block_decoupling():
    """n + 1 + nu/2 + U1 = 0 at n = 3 splits off an exact 4 x 4 block"""
    p = MorseParams.dimensionless(-4.0, nu=0.0)
    T = morse_matrix(p, 12)
    assert T.off[3] == 0.0
    block = eigendecompose(T.leading(4)).eigenvalues
    np.testing.assert_allclose(block, [-12.25, -6.25, -2.25, -0.25], atol=1e-9)


def test_morse_truncation_approaches_bound_levels(morse4):
    values = eigendecompose(morse_matrix(morse4, 400)).eigenvalues
    exact = np.array([-12.25, -6.25, -2.25, -0.25])
    negative = values[values < 0]
    assert len(negative) == 4
    # orthonormal basis: truncated levels bound the exact ones from above
    assert np.all(negative >= exact - 1e-9)
    np.testing.assert_allclose(negative[:3], exact[:3], atol=1e-6)
    # the least bound state has the slowest tail
    assert negative[3] - exact[3] < 5e-2


def test_morse_sign_convention_does_not_change_spectrum(morse4):
    T = morse_matrix(morse4, 60)
    np.testing.assert_allclose(
        eigendecompose(T).eigenvalues, eigendecompose(T.negated_off()).eigenvalues, rtol=1e-12, atol=1e-10
    )


def test_morse_recurrence_matches_matrix(morse4):
    rec = morse_recurrence(morse4)
    T = morse_matrix(morse4, 6)
    np.testing.assert_allclose([rec.a(n) for n in range(6)], T.diag, rtol=1e-14)
    np.testing.assert_allclose([rec.b(n) for n in range(5)], T.off, rtol=1e-14)


def test_morse_rejects_nu():
    with pytest.raises(DomainError):
        MorseParams(lam=1.0, V1=-2.0, nu=-1.0)


def test_morse_bound_state_count():
    assert MorseParams(lam=1.0, V1=-2.0).bound_state_count == 4
    assert MorseParams(lam=1.0, V1=0.0).bound_state_count == 0
    # U1 = -1/2 exactly has none
    assert MorseParams.dimensionless(-0.5).bound_state_count == 0


def test_matrix_entries_finite_for_large_index(scarf753, morse4):
    for T in (scarf_matrix(scarf753, 100_000), morse_matrix(morse4, 100_000)):
        assert np.all(np.isfinite(T.diag)) and np.all(np.isfinite(T.off))


def test_basis_size_limits(well5):
    with pytest.raises(DomainError):
        well_matrix(well5, 0)
    with pytest.raises(DomainError):
        well_matrix(well5, 100_001)


def test_system_matrix_dispatch(well5, scarf753, morse4, coulomb_unit):
    assert system_matrix(well5, 4).diag.tolist() == well_matrix(well5, 4).diag.tolist()
    assert system_matrix(scarf753, 4).size == 4
    assert system_matrix(morse4, 4).size == 4
    with pytest.raises(DomainError):
        system_matrix(coulomb_unit, 4)


def test_symtridiag_rejects_nonfinite():
    with pytest.raises(NonFiniteInputError):
        SymTridiag(diag=[1.0, np.nan], off=[0.5])


def test_symtridiag_shape():
    with pytest.raises(ValidationError):
        SymTridiag(diag=[1.0, 2.0], off=[0.5, 0.5])


def test_basis_choice_coulomb():
    report = validate_basis_choice(CoulombParams(Z=1.0, ell=2, E=1.0))
    assert report.family == "laguerre"
    assert report.exponents == {"nu": 5, "alpha": 3}


def test_basis_choice_coulomb_conflict():
    with pytest.raises(InconsistentBasisError):
        validate_basis_choice(CoulombParams(Z=1.0, ell=2, E=1.0, nu=3.0))


def test_basis_choice_well(well5):
    report = validate_basis_choice(well5)
    assert report.family == "chebyshev_u"
    assert report.exponents == {"alpha": 0.5}
    with pytest.raises(InconsistentBasisError):
        validate_basis_choice(WellParams(V0=1.0, alpha=1.0))


def test_basis_choice_scarf(scarf753):
    assert validate_basis_choice(scarf753).family == "jacobi"


def test_basis_choice_morse(morse4):
    assert validate_basis_choice(morse4).family == "laguerre"
    with pytest.raises(InconsistentBasisError) as info:
        validate_basis_choice(MorseParams(lam=1.0, V1=-2.0, V2=1.0))
    assert "U2" in str(info.value)


def test_basis_choice_unknown_system():
    with pytest.raises(DomainError):
        validate_basis_choice(object())
    with pytest.raises(DomainError):
        system_matrix(object(), 5)
