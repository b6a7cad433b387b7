import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from darboux_scattering import DeformedScattering, Scenario, deform_amplitudes, make_potential
from darboux_scattering.exceptions import ZeroWronskian


def test_fit_predict_transform():
    est = DeformedScattering("soliton", {"h": 2.5}, "twist:0").fit()
    k = np.array([0.5, 1.0, 3.0])
    ref = deform_amplitudes(Scenario.build(make_potential("soliton", h=2.5), [("twist", 0)]), k)
    np.testing.assert_array_equal(est.predict(k), ref.r_D)
    both = est.set_params(output="both").fit().predict(k)
    assert both.shape == (3, 2)
    x = np.array([[-10.0, 0.0], [1.0, 10.0]])
    u = est.transform(x)
    assert u.shape == (2, 2) and u[0, 0] == pytest.approx(make_potential("soliton", h=2.5).potential(-10.0), abs=1e-6)


def test_params_and_clone():
    est = DeformedScattering("morse", {"h": 1.3, "mu": 1.0}, [("overshoot", 3)])
    p = est.get_params()
    assert p["family"] == "morse" and p["seeds"] == [("overshoot", 3)]
    c = clone(est).fit()
    assert abs(abs(c.predict([2.0])[0]) - 1) < 1e-12


def test_errors():
    with pytest.raises(NotFittedError):
        DeformedScattering().predict([1.0])
    with pytest.raises(ZeroWronskian):
        DeformedScattering("soliton", {"h": 2.5}, "twist:1").fit()
    DeformedScattering("soliton", {"h": 2.5}, "twist:1", force=True).fit()
    with pytest.raises(ValueError):
        DeformedScattering("morse", {"h": 1.3, "mu": 1.0}, output="t").fit().predict([1.0])
    with pytest.raises(ValueError):
        DeformedScattering(output="q").fit()


def test_score():
    est = DeformedScattering("soliton", {"h": 1.0}).fit()
    assert est.score([1.0, 2.0], [0.0, 0.0]) > -1e-12
