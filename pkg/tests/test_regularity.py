import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux_scattering import Scenario, check_regularity, make_potential
from darboux_scattering.exceptions import NotApplicable
from darboux_scattering.regularity import (
    Verdict,
    krein_adler_check,
    nodeless_scan,
    scenario_index_analysis,
    type1_chain_condition,
)


@pytest.mark.parametrize("D,verdict", [
    ((2,), Verdict.REGULAR),
    ((2, 3), Verdict.REGULAR),
    ((2, 5), Verdict.REGULAR),
    ((4, 5), Verdict.REGULAR),
    ((1,), Verdict.SINGULAR),
    ((3,), Verdict.SINGULAR),
    ((2, 3, 4), Verdict.REGULAR),
    ((1, 3), Verdict.SINGULAR),
])
def test_product_condition(D, verdict):
    assert krein_adler_check(D).verdict is verdict


def test_product_condition_details():
    a = krein_adler_check([1])
    assert a.barD == (1,) and a.failing_n == 0


@given(st.sets(st.integers(0, 9), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_product_condition_brute_force(D):
    a = krein_adler_check(D)
    N = max(D)
    bar = [e for e in range(N + 1) if e not in {N - d for d in D}]
    ok = all(np.prod([n - e for e in bar]) >= 0 for n in range(50))
    assert (a.verdict is Verdict.REGULAR) == ok


def test_product_condition_input_validation():
    with pytest.raises(ValueError):
        krein_adler_check([])
    with pytest.raises(ValueError):
        krein_adler_check([-1])


@pytest.mark.parametrize("D", [(0,), (2,), (2, 3), (2, 5), (4, 5), (1,), (3,), (2, 3, 4)])
def test_scan_agrees_with_condition(soliton, D):
    rep = check_regularity(Scenario.build(soliton, [("twist", d) for d in D]))
    assert rep.agrees is True


def test_scan_finds_zero(soliton):
    res = nodeless_scan(Scenario.build(soliton, [("twist", 1)]))
    assert not res.nodeless and res.zeros == pytest.approx([0.0], abs=1e-8)
    assert nodeless_scan(Scenario(soliton, ())).nodeless


def test_type1_chain(morse_v3):
    assert type1_chain_condition(morse_v3) is True
    eck = Scenario.build(make_potential("eckart", g=2, mu=9), [("overshoot", 4), ("overshoot", 5)])
    assert type1_chain_condition(eck) is True
    assert check_regularity(eck).regular
    with pytest.raises(NotApplicable):
        type1_chain_condition(Scenario.build(make_potential("eckart", g=2, mu=9), [("twist", 2)]))


def test_condition_not_applied_to_mixed_or_hpt(soliton):
    with pytest.raises(NotApplicable):
        scenario_index_analysis(Scenario.build(soliton, [("overshoot", 6)]))
    with pytest.raises(NotApplicable):
        scenario_index_analysis(Scenario.build(make_potential("hpt", g=1.2, h=3.4), [("twist", 1, "gh")]))


def test_eckart_upper_range_routed_to_scan():
    # product condition says regular but the Wronskian has a node
    sc = Scenario.build(make_potential("eckart", g=2.2, mu=9), [("twist", 6)])
    with pytest.raises(NotApplicable):
        scenario_index_analysis(sc)
    rep = check_regularity(sc)
    assert not rep.regular and rep.zeros[0] == pytest.approx(0.8447, abs=1e-3)


def test_virtual_seeds_regular(morse_v3):
    assert check_regularity(morse_v3).regular
    hpt = Scenario.build(make_potential("hpt", g=1.2, h=3.4), [("twist", 1, "h")])
    assert check_regularity(hpt).regular
