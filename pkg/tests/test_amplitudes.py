import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux_scattering import Scenario, deform_amplitudes, invariance_check, make_potential, pole_catalog, probe_pole
from darboux_scattering.amplitudes import PoleKind, seed_factors, shape_invariance_suite
from darboux_scattering.exceptions import PoleHit

FAMILIES = {
    "rm": ({"h": 3.0, "mu": 2.0}, [("twist", 0)]),
    "soliton": ({"h": 2.5}, [("twist", 0)]),
    "hst": ({"h": 2.0, "mu": 1.0}, [("twist", 0)]),
    "morse": ({"h": 1.3, "mu": 1.0}, [("overshoot", 3)]),
    "eckart": ({"g": 2.0, "mu": 9.0}, [("twist", 0)]),
    "hpt": ({"g": 1.2, "h": 3.4}, [("twist", 1, "h")]),
    "coulomb": ({"g": 2.6}, [("twist", 0)]),
}


def _scenario(fam):
    params, seeds = FAMILIES[fam]
    return Scenario.build(make_potential(fam, **params), seeds)


@pytest.mark.parametrize("fam", list(FAMILIES))
def test_identity_without_seeds(fam):
    spec = make_potential(fam, **FAMILIES[fam][0])
    k = np.linspace(0.2, 6, 9)
    d = deform_amplitudes(Scenario(spec, ()), k)
    base = spec.original_amplitudes(k)
    np.testing.assert_array_equal(d.r_D, base.r)
    if base.t is not None:
        np.testing.assert_array_equal(d.t_D, base.t)


def test_soliton_factors(soliton_pv0):
    d = deform_amplitudes(soliton_pv0, 1.0)
    f = (1 + 3.5j) / (1 - 3.5j)
    assert d.t_D / d.t == pytest.approx(f, rel=1e-14)
    assert d.r_D / d.r == pytest.approx(-f, rel=1e-14)


def test_morse_factor(morse_v3):
    d = deform_amplitudes(morse_v3, 2.0)
    assert d.r_D / d.r == pytest.approx(-(2 + 1.7j) / (2 - 1.7j), rel=1e-14)
    assert d.t_D is None


@pytest.mark.parametrize("fam", list(FAMILIES))
def test_modulus_invariance(fam):
    rep = invariance_check(_scenario(fam), np.linspace(0.1, 10, 100))
    assert rep.passed
    assert rep.max_dev_r < 1e-12


@given(st.floats(0.01, 50))
@settings(max_examples=50, deadline=None)
def test_coulomb_unimodular(k):
    d = deform_amplitudes(_scenario("coulomb"), k)
    assert abs(abs(d.r_D) - 1) < 1e-12


def test_pole_hit():
    sc = _scenario("morse")
    with pytest.raises(PoleHit):
        seed_factors(sc.spec, sc.seeds[0], 1.7j)


def test_soliton_catalog(soliton_pv0):
    cat = pole_catalog(soliton_pv0)
    eig = sorted(r.k.imag for r in cat if r.kind is PoleKind.EIGEN)
    assert eig == pytest.approx([0.5, 1.5, 2.5, 3.5])
    new = next(r for r in cat if r.kind is PoleKind.EIGEN and abs(r.k - 3.5j) < 1e-12)
    assert new.energy == pytest.approx(-12.25)


def test_morse_catalog(morse_v3):
    cat = pole_catalog(morse_v3)
    kinds = [r.kind for r in cat]
    assert kinds.count(PoleKind.EIGEN) == 2
    cancelled = [r for r in cat if r.kind is PoleKind.CANCELLED]
    assert len(cancelled) == 1 and cancelled[0].k == pytest.approx(1.7j)
    assert max(cancelled[0].probe.max_abs) < 1e3


def test_eckart_cancelled_pole():
    sc = Scenario.build(make_potential("eckart", g=2, mu=9), [("overshoot", 4)])
    rec = next(r for r in pole_catalog(sc) if r.kind is PoleKind.CANCELLED)
    assert rec.k == pytest.approx(4.5j)
    assert rec.probe.bounded


def test_hst_qnm():
    cat = pole_catalog(Scenario(make_potential("hst", h=2, mu=1), ()), n_cut=1)
    qnm = [r.k for r in cat if r.kind is PoleKind.QNM]
    assert any(abs(k - (1 - 0.5j)) < 1e-12 for k in qnm)
    assert any(abs(k - (-1 - 0.5j)) < 1e-12 for k in qnm)


def test_probe_distinguishes(morse_v3):
    assert probe_pole(morse_v3, 1.7j).bounded
    pr = probe_pole(morse_v3, 1.3j)
    assert pr.grows and pr.max_abs[-1] > 1e6


@pytest.mark.parametrize("fam", list(FAMILIES))
def test_shape_invariance(fam):
    rep = shape_invariance_suite(make_potential(fam, **FAMILIES[fam][0]), np.linspace(0.1, 10, 50))
    assert rep.residual < 1e-9


def test_coulomb_shape_step():
    rep = shape_invariance_suite(make_potential("coulomb", g=2.0), np.linspace(0.1, 5, 20))
    assert rep.shifted_params == {"g": 3.0}
    assert rep.residual_r < 1e-9
