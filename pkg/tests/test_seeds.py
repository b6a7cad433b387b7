import numpy as np
import pytest

from darboux_scattering import Scenario, admissible_ranges, make_potential, make_seed
from darboux_scattering.darboux import schrodinger_residual
from darboux_scattering.exceptions import EmptyRange
from darboux_scattering.jets import Jet
from darboux_scattering.seeds import SeedKind, asymptotic_exponent_check, parse_kind, sign_pattern_ok


def _seed(fam, params, origin, v, twist=None):
    return make_seed(make_potential(fam, **params), origin, v, twist)


@pytest.mark.parametrize("fam,params,origin,v,twist,kind,dplus,energy", [
    ("soliton", {"h": 2.5}, "twist", 0, None, SeedKind.PSEUDO_VIRTUAL, 3.5, -12.25),
    ("soliton", {"h": 2.5}, "overshoot", 6, None, SeedKind.OVERSHOOT_PSEUDO, 3.5, -12.25),
    ("hpt", {"g": 1.2, "h": 3.4}, "twist", 1, "h", SeedKind.VIRTUAL_I, 7.6, -57.76),
    ("coulomb", {"g": 2.6}, "twist", 1, None, SeedKind.PSEUDO_VIRTUAL, 1 / 0.6, -1 / 0.36),
    ("morse", {"h": 1.3, "mu": 1.0}, "overshoot", 3, None, SeedKind.VIRTUAL_I, 1.7, -2.89),
    ("eckart", {"g": 2.0, "mu": 9.0}, "twist", 2, None, SeedKind.VIRTUAL_II, None, None),
])
def test_classification(fam, params, origin, v, twist, kind, dplus, energy):
    s = _seed(fam, params, origin, v, twist)
    assert s.kind is kind
    if dplus is not None:
        assert s.delta_plus == pytest.approx(dplus, rel=1e-13)
        assert s.energy == pytest.approx(energy, rel=1e-13)
    assert s.energy < s.spec.energy(0)
    assert sign_pattern_ok(s)


def test_rm_overshoot_gap_is_empty():
    rm = make_potential("rm", h=3, mu=2)
    with pytest.raises(EmptyRange):
        make_seed(rm, "overshoot", 2)
    empty = [r for r in admissible_ranges(rm) if r.origin == "overshoot" and not r.degrees]
    assert len(empty) == 2


def test_soliton_ranges():
    rs = admissible_ranges(make_potential("soliton", h=2.5))
    pv = next(r for r in rs if r.origin == "twist")
    ov = next(r for r in rs if r.origin == "overshoot")
    assert pv.degrees[0] == 0
    assert ov.degrees[0] == 6


def test_seed_values():
    assert _seed("soliton", {"h": 2.5}, "twist", 0).value(0.0) == pytest.approx(1.0)
    assert _seed("morse", {"h": 1.3, "mu": 1.0}, "twist", 0).value(0.0) == pytest.approx(np.e)


@pytest.mark.parametrize("fam,params,origin,v,twist,side,expected", [
    ("soliton", {"h": 2.5}, "twist", 0, None, "plus", 3.5),
    ("rm", {"h": 3.0, "mu": 2.0}, "twist", 0, None, "minus", -3.5),
    ("coulomb", {"g": 2.6}, "twist", 0, None, "plus", 0.625),
    ("morse", {"h": 1.3, "mu": 1.0}, "overshoot", 3, None, "plus", 1.7),
    ("hpt", {"g": 1.2, "h": 3.4}, "twist", 1, "h", "plus", 7.6),
])
def test_numerical_log_derivative(fam, params, origin, v, twist, side, expected):
    s = _seed(fam, params, origin, v, twist)
    assert asymptotic_exponent_check(s, side) == pytest.approx(expected, abs=1e-3)
    stated = s.delta_plus if side == "plus" else s.delta_minus
    assert stated == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("fam,params,origin,v,twist", [
    ("eckart", {"g": 2.0, "mu": 9.0}, "twist", 2, None),
    ("hst", {"h": 2.0, "mu": 1.0}, "twist", 1, None),
    ("hpt", {"g": 1.2, "h": 3.4}, "twist", 0, "gh"),
    ("coulomb", {"g": 2.6}, "twist", 3, None),
])
def test_seed_solves_the_equation(fam, params, origin, v, twist):
    s = _seed(fam, params, origin, v, twist)
    x = np.linspace(0.4, 3.0, 6) if s.spec.half_line else np.linspace(-2, 2, 6)
    f = s.value(Jet.variable(x, 2))
    assert np.max(schrodinger_residual(Scenario(s.spec, ()), f, x, s.energy)) < 1e-9


def test_parse_kind_aliases():
    assert parse_kind("pseudo-virtual") is SeedKind.PSEUDO_VIRTUAL
    with pytest.raises(ValueError):
        parse_kind("nonsense")
