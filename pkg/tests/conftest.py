import numpy as np
import pytest

from darboux_scattering import Scenario, make_potential


@pytest.fixture
def soliton():
    return make_potential("soliton", h=2.5)


@pytest.fixture
def soliton_pv0(soliton):
    return Scenario.build(soliton, [("twist", 0)])


@pytest.fixture
def morse_v3():
    return Scenario.build(make_potential("morse", h=1.3, mu=1.0), [("overshoot", 3)])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
