"""End-to-end acceptance checks shared by ``verify`` and the test suite.

Each check returns a :class:`CriterionResult`; none of them raises on a
numerical miss, so a run always reports every line.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np

from .amplitudes import deform_amplitudes, invariance_check, probe_pole, shape_invariance_suite
from .darboux import Scenario, norm_ratio, quadrature_norm_ratio
from .oracle import numerov_scatter, shoot_bound_states
from .potentials import Group, make_potential
from .regularity import Verdict, check_regularity

ORACLE_K = (0.5, 1.0, 2.0, 4.0)

REFERENCE: Dict[str, dict] = {
    "rm": {"h": 3.0, "mu": 2.0},
    "soliton": {"h": 2.5},
    "hst": {"h": 2.0, "mu": 1.0},
    "morse": {"h": 1.3, "mu": 1.0},
    "eckart": {"g": 2.0, "mu": 9.0},
    "hpt": {"g": 1.2, "h": 3.4},
    "coulomb": {"g": 2.6},
}

# one regular deformation per family
DEFORMED: Dict[str, List[tuple]] = {
    "rm": [("twist", 0)],
    "soliton": [("twist", 0)],
    "hst": [("twist", 0)],
    "morse": [("overshoot", 3)],
    "eckart": [("twist", 0)],
    "hpt": [("twist", 1, "h")],
    "coulomb": [("twist", 0)],
}


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def reference_potential(family: str):
    return make_potential(family, **REFERENCE[family])


def deformed_scenario(family: str) -> Scenario:
    return Scenario.build(reference_potential(family), DEFORMED[family])


# -- criteria ------------------------------------------------------------------------

def unitarity(n_k: int = 200, tol: float = 1e-10, seed: int = 0):
    rng = np.random.default_rng(seed)
    k = rng.uniform(0.1, 10.0, n_k)
    worst = {}
    for fam in REFERENCE:
        spec = reference_potential(fam)
        if spec.group is Group.A:
            T, R = spec.flux_coefficients(k)
            worst[fam] = float(np.max(np.abs(T + R - 1.0)))
        else:
            r = spec.original_amplitudes(k).r
            worst[fam] = float(np.max(np.abs(np.abs(r) ** 2 - 1.0)))
    bad = max(worst, key=worst.get)
    return max(worst.values()) < tol, f"max deviation {worst[bad]:.1e} ({bad})"


def pole_spectrum_duality(tol: float = 1e-6):
    cases = [
        (make_potential("soliton", h=2.5), [-6.25, -2.25, -0.25]),
        (make_potential("rm", h=3.0, mu=2.0), [-49.0 / 9.0, -1.0]),
        (make_potential("coulomb", g=2.0), [-1.0 / (2.0 + n) ** 2 for n in range(3)]),
    ]
    errs = []
    for spec, expected in cases:
        analytic = spec.energies(len(expected))[: len(expected)]
        shot = shoot_bound_states(spec)
        if spec.group is not Group.C and len(shot) != len(expected):
            return False, f"{spec!r}: shooting found {len(shot)} levels, expected {len(expected)}"
        shot = shot[: len(expected)]
        errs.append(max(max(abs(a - b) for a, b in zip(shot, expected)),
                        max(abs(a - b) for a, b in zip(analytic, expected))))
    return max(errs) < tol, f"max |E_shoot - E_n| {max(errs):.1e}"


def deformation_invariance(tol: float = 1e-12):
    k = np.linspace(0.1, 10.0, 200)
    worst = 0.0
    for fam in DEFORMED:
        sc = deformed_scenario(fam)
        if not check_regularity(sc).regular:
            return False, f"{sc!r} is singular"
        rep = invariance_check(sc, k, tol)
        worst = max(worst, rep.max_dev_r, rep.max_dev_t or 0.0)
    return worst < tol, f"max ||amp_D| - |amp|| {worst:.1e} over 7 families"


def oracle_agreement(tol: float = 1e-4):
    k = np.array(ORACLE_K)
    worst, where = 0.0, ""
    for fam in REFERENCE:
        if fam == "coulomb":
            continue
        spec = reference_potential(fam)
        for sc in (Scenario(spec, ()), deformed_scenario(fam)):
            num = numerov_scatter(sc, k)
            ana = deform_amplitudes(sc, k)
            dev = max(abs(o.r_num - a) for o, a in zip(num, ana.r_D))
            if ana.t_D is not None:
                dev = max(dev, max(abs(o.t_num - a) for o, a in zip(num, ana.t_D)))
            if dev >= worst:
                worst, where = dev, repr(sc)
    return worst < tol, f"max |oracle - analytic| {worst:.1e} ({where})"


def eigenstate_creation(tol: float = 1e-6):
    spec = make_potential("soliton", h=2.5)
    base = shoot_bound_states(spec)
    new = shoot_bound_states(Scenario.build(spec, [("twist", 0)]))
    gained = len(new) - len(base)
    lowest_ok = abs(new[0] + 12.25) < tol if new else False
    rest_ok = len(new) == len(base) + 1 and all(abs(a - b) < tol for a, b in zip(new[1:], base))
    morse = make_potential("morse", h=1.3, mu=1.0)
    mb = shoot_bound_states(morse)
    md = shoot_bound_states(Scenario.build(morse, [("overshoot", 3)]))
    iso = len(mb) == len(md) and all(abs(a - b) < tol for a, b in zip(mb, md))
    ok = gained == 1 and lowest_ok and rest_ok and iso
    return ok, f"soliton gained {gained} level(s), lowest {new[0]:.9f}; Morse levels {md} vs {mb}"


def pole_cancellation(bound: float = 1e3, growth: float = 1e6):
    sc = Scenario.build(make_potential("morse", h=1.3, mu=1.0), [("overshoot", 3)])
    cancelled = probe_pole(sc, 1.7j)
    eigen = probe_pole(sc, 1.3j)
    ok = cancelled.max_abs[0] < bound and eigen.max_abs[-1] > growth
    return ok, (f"|r_D| near 1.7i <= {max(cancelled.max_abs):.3g}; "
                f"eigen-pole at 1.3i reaches {eigen.max_abs[-1]:.3g}")


def krein_adler_vs_scan():
    spec = make_potential("soliton", h=2.5)
    sets = [(1,), (2,), (2, 3), (2, 5), (4, 5), (2, 3, 4), (3,)]
    mism = []
    for D in sets:
        rep = check_regularity(Scenario.build(spec, [("twist", d) for d in D]))
        if not rep.agrees:
            mism.append(D)
    verdicts = []
    for D in sets:
        rep = check_regularity(Scenario.build(spec, [("twist", d) for d in D]))
        verdicts.append(f"{set(D)}:{'R' if rep.regular else 'S'}")
    return not mism, ("agree on all 7 sets " if not mism else f"disagree on {mism} ") + " ".join(verdicts)


def reflectionless_limit(tol_analytic: float = 1e-12, tol_oracle: float = 1e-4):
    k = np.linspace(0.1, 10.0, 200)
    a_max, o_max = 0.0, 0.0
    for h in (1.0, 2.0):
        spec = make_potential("soliton", h=h)
        a_max = max(a_max, float(np.max(np.abs(spec.original_amplitudes(k).r))))
        o_max = max(o_max, max(abs(o.r_num) for o in numerov_scatter(spec, np.array(ORACLE_K))))
    return a_max < tol_analytic and o_max < tol_oracle, f"max |r| {a_max:.1e}, max |r_num| {o_max:.1e}"


def shape_invariance(tol: float = 1e-9):
    k = np.linspace(0.1, 10.0, 50)
    worst = {fam: shape_invariance_suite(reference_potential(fam), k).residual for fam in REFERENCE}
    bad = max(worst, key=worst.get)
    return worst[bad] < tol, f"max residual {worst[bad]:.1e} ({bad})"


def qnm_catalog(growth: float = 1e6):
    sc = Scenario(make_potential("hst", h=2.0, mu=1.0), ())
    pr = probe_pole(sc, 1.0 - 0.5j)
    return pr.max_abs[-1] > growth, f"max |amp| on radius {pr.radii[-1]:g} circle {pr.max_abs[-1]:.3g}"


def norm_positivity(tol: float = 1e-4):
    scenarios = [
        Scenario.build(make_potential("soliton", h=2.5), [("twist", 0)]),
        Scenario.build(make_potential("morse", h=1.3, mu=1.0), [("overshoot", 3)]),
    ]
    worst, positive = 0.0, True
    for sc in scenarios:
        for n in sc.spec.levels():
            pred = norm_ratio(sc, n)
            positive &= pred > 0
            worst = max(worst, abs(quadrature_norm_ratio(sc, n) / pred - 1.0))
    return positive and worst < tol, f"all products positive: {positive}; max rel. error {worst:.1e}"


CRITERIA: List[Tuple[int, str, Callable[[], Tuple[bool, str]]]] = [
    (1, "unitarity", unitarity),
    (2, "pole-spectrum duality", pole_spectrum_duality),
    (3, "deformation invariance", deformation_invariance),
    (4, "oracle agreement", oracle_agreement),
    (5, "eigenstate creation", eigenstate_creation),
    (6, "pole cancellation", pole_cancellation),
    (7, "product condition vs scan", krein_adler_vs_scan),
    (8, "reflectionless limit", reflectionless_limit),
    (9, "shape invariance", shape_invariance),
    (10, "quasinormal mode probe", qnm_catalog),
    (11, "norm positivity", norm_positivity),
]


def run_criterion(number: int) -> CriterionResult:
    num, name, fn = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported like any other
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(num, name, bool(ok), detail, time.perf_counter() - t0)


def run_all() -> List[CriterionResult]:
    return [run_criterion(n) for n, _, _ in CRITERIA]
