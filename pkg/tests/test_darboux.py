import numpy as np
import pytest

from darboux_scattering import Scenario, deformed_potential, make_potential, wronskian
from darboux_scattering.darboux import (
    deformed_eigenfunction,
    norm_ratio,
    overlap,
    quadrature_norm_ratio,
    schrodinger_residual,
)
from darboux_scattering.exceptions import ZeroWronskian
from darboux_scattering import jets


class Expo:
    def __init__(self, a):
        self.a = a

    def parts(self, x, order=None):
        return np.zeros(np.shape(x.value)), jets.exp(self.a * x)


def test_empty_wronskian():
    w = wronskian([], np.array([0.1, 2.0]))
    np.testing.assert_array_equal(w.value, 1.0)
    np.testing.assert_array_equal(w.logderiv1, 0.0)


@pytest.mark.parametrize("strategy", ["lu", "cofactor", "crum"])
def test_exponential_pair(strategy):
    x = np.linspace(-1, 1, 5)
    a, b = 0.7, -1.9
    w = wronskian([Expo(a), Expo(b)], x, strategy=strategy)
    np.testing.assert_allclose(w.value, (b - a) * np.exp((a + b) * x), rtol=1e-13)
    np.testing.assert_allclose(w.logderiv1, a + b, rtol=1e-13)


def test_vandermonde_three():
    al = [0.3, -1.1, 2.0]
    x = np.array([0.4])
    vdm = np.prod([al[j] - al[i] for i in range(3) for j in range(i + 1, 3)])
    w = wronskian([Expo(a) for a in al], x)
    np.testing.assert_allclose(w.value, vdm * np.exp(sum(al) * x), rtol=1e-12)


def test_strategies_agree_on_three_seeds():
    spec = make_potential("soliton", h=4.3)
    seeds = Scenario.build(spec, [("twist", 0), ("twist", 2), ("twist", 3)]).seeds
    x = np.array([0.7])
    vals = [wronskian(seeds, x, strategy=s).value for s in ("lu", "cofactor", "crum")]
    np.testing.assert_allclose(vals[1], vals[0], rtol=1e-10)
    np.testing.assert_allclose(vals[2], vals[0], rtol=1e-10)


def test_wronskian_zero_detected():
    sc = Scenario.build(make_potential("soliton", h=2.5), [("twist", 1)])
    with pytest.raises(ZeroWronskian):
        wronskian(sc.seeds, np.array([0.0]))


def test_deformed_potential_trivial(soliton):
    x = np.linspace(-3, 3, 11)
    np.testing.assert_array_equal(deformed_potential(Scenario(soliton, ()), x), soliton.potential(x))


def test_deformed_potential_flat_tails(soliton_pv0, soliton):
    for x in (-10.0, 10.0):
        assert deformed_potential(soliton_pv0, x) == pytest.approx(soliton.potential(x), abs=1e-6)


def test_deformed_potential_against_fd(soliton_pv0, soliton):
    def logw(t):
        return float(wronskian(soliton_pv0.seeds, np.array([t])).log_abs[0])

    def d2(h):
        return (logw(h) - 2 * logw(0.0) + logw(-h)) / h ** 2

    h = 1e-3
    rich = (4 * d2(h / 2) - d2(h)) / 3
    assert deformed_potential(soliton_pv0, 0.0) == pytest.approx(soliton.potential(0.0) - 2 * rich, abs=1e-6)


def test_deformed_potential_many_strategies(morse_v3):
    x = np.linspace(-2, 4, 9)
    base = deformed_potential(morse_v3, x)
    for s in ("cofactor", "crum"):
        np.testing.assert_allclose(deformed_potential(morse_v3, x, strategy=s), base, rtol=1e-10, atol=1e-12)


def test_deformed_eigenfunction_residual(soliton_pv0):
    x = np.linspace(-3, 3, 13)
    f = deformed_eigenfunction(soliton_pv0, 0, x, jet=True)
    assert np.max(schrodinger_residual(soliton_pv0, f, x, -6.25)) < 1e-5


def test_deformed_eigenfunction_trivial(soliton):
    x = np.linspace(-2, 2, 5)
    np.testing.assert_allclose(deformed_eigenfunction(Scenario(soliton, ()), 1, x),
                               np.real(soliton.eigenfunction(1, x)), rtol=1e-13)


def test_orthogonality(soliton_pv0):
    assert abs(overlap(soliton_pv0, 0, 1)) < 1e-6


def test_norm_ratio(soliton_pv0, morse_v3):
    assert norm_ratio(Scenario(soliton_pv0.spec, ()), 0) == 1.0
    assert norm_ratio(soliton_pv0, 0) == pytest.approx(6.0)
    for sc in (soliton_pv0, morse_v3):
        for n in sc.spec.levels():
            r = norm_ratio(sc, n)
            assert r > 0
            assert quadrature_norm_ratio(sc, n) == pytest.approx(r, rel=1e-4)


def test_scenario_rejects_duplicates(soliton):
    with pytest.raises(ValueError):
        Scenario.build(soliton, [("twist", 0), ("twist", 0)])
