"""
Shared fixtures: published spectra and standard parameter sets
"""

import os

import numpy as np
import pytest

from schemas import CoulombParams, MorseParams, ScarfParams, WellParams
from settings import get_settings

# Sinusoidal-bottom well, N = 50, eps_n in units of lambda^2/2
WELL_TABLE = {
    0.0: [float((n + 1) ** 2) for n in range(10)],
    2.0: [0.686720257, 4.113008823, 9.057352856, 16.031789784, 25.020212925,
          36.013989568, 49.010257797, 64.007843753, 81.006192252, 100.005012691],
    5.0: [-0.595539559, 4.345345170, 9.354964694, 16.200110073, 25.126692366,
          36.087552002, 49.064156865, 64.049043706, 81.038711488, 100.031334558],
    10.0: [-3.622765814, 3.873494394, 10.147416013, 16.813060198, 25.512098215,
           36.351914438, 49.257285819, 64.196465710, 81.154988044, 100.125413252],
    20.0: [-10.838068721, 0.432511407, 10.358251307, 18.778787010, 27.111504117,
           37.436795310, 50.040106169, 64.790623174, 81.622257081, 100.502864037],
}

# Scarf well {V0, V+, V-} = {7, 5, 3}, converged column (N = 100)
SCARF_CONVERGED = [7.680625404, 14.338493494, 22.546540967, 32.767801800, 45.034852009,
                   59.334170172, 75.654553948, 93.988866057, 114.332639480, 136.683022577]

# (N, n) -> eps_n where the small truncations still differ from the converged column
SCARF_TRUNCATED = {
    (10, 5): 59.334170173,
    (10, 6): 75.654554063,
    (10, 7): 93.988897443,
    (10, 8): 114.338418785,
    (10, 9): 137.163172017,
    (11, 6): 75.654553948,
    (11, 7): 93.988866117,
    (11, 8): 114.332659905,
    (11, 9): 136.687579697,
    (12, 7): 93.988866057,
    (12, 8): 114.332639513,
    (12, 9): 136.683036310,
    (13, 8): 114.332639480,
    (13, 9): 136.683022596,
}

TABLE_TOL = 1e-8


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test sees defaults, whatever the shell or a stray .env sets"""
    for name in list(os.environ):
        if name.startswith("TRA_"):
            monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def well5():
    return WellParams.dimensionless(5.0)


@pytest.fixture
def scarf753():
    return ScarfParams.dimensionless(7.0, 5.0, 3.0)


@pytest.fixture
def coulomb_unit():
    """Z = 1, l = 0, lambda = 1, E = 1/2, so eps = 1 and Z/kappa = 1"""
    return CoulombParams(Z=1.0, ell=0, lam=1.0, E=0.5)


@pytest.fixture
def morse4():
    """lambda = 1, V1 = -2, i.e. U1 = -4 with four bound states"""
    return MorseParams(lam=1.0, V1=-2.0, nu=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
