import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux_scattering import Scenario, make_potential
from darboux_scattering.darboux import schrodinger_residual
from darboux_scattering.exceptions import DomainError, ParameterRangeError
from darboux_scattering.jets import Jet
from darboux_scattering.potentials import FAMILIES, Group, bracket_prime, family_class

REFERENCE = {
    "rm": {"h": 3.0, "mu": 2.0},
    "soliton": {"h": 2.5},
    "hst": {"h": 2.0, "mu": 1.0},
    "morse": {"h": 1.3, "mu": 1.0},
    "eckart": {"g": 2.0, "mu": 9.0},
    "hpt": {"g": 1.2, "h": 3.4},
    "coulomb": {"g": 2.6},
}


def test_family_table_complete():
    assert set(FAMILIES) == set(REFERENCE)
    groups = {tag: cls.group for tag, cls in FAMILIES.items()}
    assert [t for t, g in groups.items() if g is Group.A] == ["rm", "soliton", "hst"]
    assert groups["coulomb"] is Group.C


def test_unknown_family():
    with pytest.raises(KeyError):
        family_class("harmonic")


@pytest.mark.parametrize("fam,params", [
    ("rm", {"h": 1.0, "mu": 2.0}),
    ("soliton", {"h": 0.4}),
    ("eckart", {"g": 4.0, "mu": 9.0}),
    ("hpt", {"g": 3.0, "h": 2.0}),
    ("coulomb", {"g": 1.2}),
])
def test_parameter_ranges_enforced(fam, params):
    with pytest.raises(ParameterRangeError):
        make_potential(fam, **params)


def test_bracket_prime():
    assert bracket_prime(2.0) == 1
    assert bracket_prime(2.5) == 2
    assert bracket_prime(0.3) == 0


def test_rm_asymptote():
    rm = make_potential("rm", h=3, mu=2)
    assert rm.asymptote("plus") == pytest.approx(8.0)
    assert rm.potential(40.0) == pytest.approx(8.0, abs=1e-12)
    assert rm.asymptote("minus") == 0.0


def test_spectra():
    assert make_potential("soliton", h=2.5).energies() == pytest.approx([-6.25, -2.25, -0.25])
    rm = make_potential("rm", h=3, mu=2)
    assert rm.nmax() == 1
    assert rm.energies() == pytest.approx([-49 / 9, -1.0])
    assert make_potential("soliton", h=2.0).nmax() == 1
    c = make_potential("coulomb", g=2.0)
    assert c.energies(3)[:3] == pytest.approx([-1 / 4, -1 / 9, -1 / 16])


def test_groundstate_exponents():
    assert make_potential("soliton", h=2.5).groundstate_exponents() == (2.5, -2.5)
    assert make_potential("eckart", g=2, mu=9).groundstate_exponents()[0] == pytest.approx(2.5)
    assert make_potential("coulomb", g=2).groundstate_exponents()[0] == pytest.approx(0.5)


@pytest.mark.parametrize("fam", list(REFERENCE))
def test_eigenfunctions_solve_the_equation(fam):
    spec = make_potential(fam, **REFERENCE[fam])
    sc = Scenario(spec, ())
    x = np.linspace(0.3, 3.0, 7) if spec.half_line else np.linspace(-2.5, 2.5, 7)
    for n in spec.levels(3):
        f = spec.eigenfunction(n, Jet.variable(x, 2))
        assert np.max(schrodinger_residual(sc, f, x, spec.energy(n))) < 1e-10


def test_hst_eigenfunction_against_fd():
    spec = make_potential("hst", h=2, mu=1)
    x, h = 0.7, 1e-3
    f = lambda t: float(np.real(spec.eigenfunction(1, t)))
    fd = lambda s: (f(x + s) - 2 * f(x) + f(x - s)) / s ** 2
    d2 = (4 * fd(h / 2) - fd(h)) / 3
    resid = -d2 + (spec.potential(x) - spec.energy(1)) * f(x)
    assert abs(resid) < 1e-6 * max(1.0, abs(f(x)))


def test_domain_check():
    with pytest.raises(DomainError):
        make_potential("hpt", g=1.2, h=3.4).potential(-0.5)


def test_soliton_h1_reflectionless():
    spec = make_potential("soliton", h=1.0)
    for k in (0.5, 2.0, 7.0):
        a = spec.original_amplitudes(k)
        assert a.t == pytest.approx((k + 1j) / (k - 1j), abs=1e-13)
        assert abs(a.r) < 1e-14
    T, R = spec.flux_coefficients(2.0)
    assert (T, R) == pytest.approx((1.0, 0.0), abs=1e-13)


def test_morse_unimodular():
    assert abs(make_potential("morse", h=1.3, mu=1).original_amplitudes(1.0).r) == pytest.approx(1.0, abs=1e-14)


def test_coulomb_reflection_value():
    # exp(-2 pi i) Gamma(2-i)/Gamma(2+i), mpmath reference
    r = make_potential("coulomb", g=2).original_amplitudes(1.0).r
    assert r == pytest.approx(0.5673470598324076 - 0.8234787876439335j, abs=1e-13)
    assert abs(r) == pytest.approx(1.0, abs=1e-14)


def test_rm_closed_channel():
    T, R = make_potential("rm", h=3, mu=2).flux_coefficients(1.0)
    assert (T, R) == (0.0, 1.0) or (T, R) == pytest.approx((0.0, 1.0), abs=1e-14)


@given(st.floats(0.05, 10))
@settings(max_examples=40, deadline=None)
def test_hst_flux_conservation(k):
    T, R = make_potential("hst", h=2, mu=1).flux_coefficients(k)
    assert T + R == pytest.approx(1.0, abs=1e-10)


def test_hst_quasinormal_modes():
    qnm = make_potential("hst", h=2, mu=1).quasinormal_modes(1)
    assert 1 - 0.5j in qnm and -1 - 0.5j in qnm


@pytest.mark.parametrize("fam", list(REFERENCE))
def test_eigenvalues_are_amplitude_poles(fam):
    spec = make_potential(fam, **REFERENCE[fam])

    def amp(k):
        a = spec.original_amplitudes(k)
        return abs(a.t if spec.group is Group.A else a.r)

    for n in spec.levels(3):
        kn = 1j * math.sqrt(-spec.energy(n))
        near, far = amp(kn * (1 + 1e-8)), amp(kn * (1 + 1e-6))
        assert near / far == pytest.approx(100.0, rel=1e-3)  # simple pole
        if spec.group is not Group.C:
            assert near > 1e6
