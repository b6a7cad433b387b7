"""Numerov oracle against the closed forms, plus values frozen from the oracle itself."""

import numpy as np
import pytest

from darboux_scattering import Scenario, deform_amplitudes, make_potential, numerov_scatter, shoot_bound_states
from darboux_scattering.exceptions import NotApplicable
from darboux_scattering.oracle import oracle_problem

# (family, params, seeds, k) -> (r, t) from numerov_scatter(..., richardson=True)
FROZEN = [
    ("soliton", {"h": 2.5}, [], 1.0, 0.08248956805759125 + 0.02524720389290893j, 0.29157337726299404 - 0.9526505211930058j),
    ("soliton", {"h": 2.5}, [("twist", 0)], 1.0, 0.083376457954464 - 0.022143089253128405j, 0.2557247663484332 + 0.962892981454289j),
    ("soliton", {"h": 2.5}, [("twist", 0)], 3.0, -0.00014705986008336095 + 6.650598318880401e-05j, -0.4120593574609889 - 0.9111569897000008j),
    ("rm", {"h": 3.0, "mu": 2.0}, [], 1.0, 0.35908553519236647 + 0.9333046546629946j, -13.861536809451778 - 9.518927609815712j),
    ("rm", {"h": 3.0, "mu": 2.0}, [("twist", 0)], 3.0, 0.030479421073151387 - 0.030520360854617495j, 1.0929078344699465 + 1.3416299798178768j),
    ("hst", {"h": 2.0, "mu": 1.0}, [("twist", 0)], 1.0, -0.1768819535557928 + 0.6832608127570113j, 0.17754382355343135 - 0.6858174880939416j),
    ("morse", {"h": 1.3, "mu": 1.0}, [("overshoot", 3)], 1.0, -0.02038731121204393 - 0.999792157171451j, None),
    ("eckart", {"g": 2.0, "mu": 9.0}, [("twist", 0)], 3.0, 0.993567040867475 - 0.11324546481801628j, None),
    ("hpt", {"g": 1.2, "h": 3.4}, [("twist", 1, "h")], 1.0, -0.9751526034288401 - 0.22153419606452487j, None),
]


@pytest.mark.parametrize("fam,params,seeds,k,r_ref,t_ref", FROZEN)
def test_closed_form_matches_frozen_oracle(fam, params, seeds, k, r_ref, t_ref):
    d = deform_amplitudes(Scenario.build(make_potential(fam, **params), seeds), k)
    assert abs(d.r_D - r_ref) < 1e-7
    if t_ref is not None:
        assert abs(d.t_D - t_ref) < 1e-7


def test_soliton_h1_reflectionless():
    o = numerov_scatter(make_potential("soliton", h=1.0), 1.5)
    assert abs(o.r_num) < 1e-4
    assert abs(o.t_num - (1.5 + 1j) / (1.5 - 1j)) < 1e-4


def test_morse_live():
    spec = make_potential("morse", h=1.3, mu=1.0)
    o = numerov_scatter(spec, 2.0)
    assert abs(o.r_num - spec.original_amplitudes(2.0).r) < 1e-4


def test_deformed_soliton_live(soliton_pv0):
    o = numerov_scatter(soliton_pv0, 1.0)
    d = deform_amplitudes(soliton_pv0, 1.0)
    assert abs(o.r_num - d.r_D) < 1e-4 and abs(o.t_num - d.t_D) < 1e-4
    assert o.residuals["flux"] < 1e-8


def test_step_convergence():
    spec = make_potential("soliton", h=2.5)
    exact = spec.original_amplitudes(1.0).t
    e1 = abs(numerov_scatter(spec, 1.0, h=4e-3).t_num - exact)
    e2 = abs(numerov_scatter(spec, 1.0, h=2e-3).t_num - exact)
    assert 10 < e1 / e2 < 22  # fourth order


def test_coulomb_refused():
    with pytest.raises(NotApplicable):
        numerov_scatter(make_potential("coulomb", g=2.6), 1.0)


def test_array_input():
    out = numerov_scatter(make_potential("soliton", h=1.0), np.array([0.5, 2.0]))
    assert len(out) == 2


def test_nonpositive_k():
    with pytest.raises(ValueError):
        numerov_scatter(make_potential("soliton", h=1.0), 0.0)


def test_problem_metadata():
    p = oracle_problem(make_potential("rm", h=3, mu=2))
    assert p.u_plus == pytest.approx(8.0) and p.u_minus == 0.0
    assert oracle_problem(make_potential("morse", h=1.3, mu=1)).left == "barrier"
    assert oracle_problem(make_potential("hpt", g=1.2, h=3.4)).left == "origin"


@pytest.mark.parametrize("spec,expected", [
    (make_potential("soliton", h=2.5), [-6.25, -2.25, -0.25]),
    (make_potential("rm", h=3.0, mu=2.0), [-49 / 9, -1.0]),
    (make_potential("hpt", g=1.2, h=3.4), [-(3.4 - 1.2) ** 2, -(3.4 - 1.2 - 2) ** 2]),
])
def test_shooting_base(spec, expected):
    assert shoot_bound_states(spec) == pytest.approx(expected, abs=1e-6)


def test_shooting_coulomb():
    got = shoot_bound_states(make_potential("coulomb", g=2.0))[:3]
    assert got == pytest.approx([-1 / 4, -1 / 9, -1 / 16], abs=1e-6)


def test_shooting_added_state(soliton_pv0):
    assert shoot_bound_states(soliton_pv0) == pytest.approx([-12.25, -6.25, -2.25, -0.25], abs=1e-6)


def test_shooting_isospectral(morse_v3):
    assert shoot_bound_states(morse_v3) == pytest.approx([-1.69, -0.09], abs=1e-6)


def test_integer_g_eckart_creates_no_state():
    # at g = 2 the degree-6 seed loses its leading Jacobi coefficient; 1/seed is then not normalisable
    sc = Scenario.build(make_potential("eckart", g=2, mu=9), [("twist", 6)])
    assert shoot_bound_states(sc) == pytest.approx([-6.25], abs=1e-6)
