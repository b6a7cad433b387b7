"""The eleven acceptance criteria, one test each; every run prints its pass/fail line."""

import pytest

from darboux_scattering.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[name.replace(" ", "-") for _, name, _ in CRITERIA])
def test_criterion(number, capsys):
    res = run_criterion(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
