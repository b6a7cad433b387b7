"""Non-singularity of deformed potentials.

Three tools: the integer product condition for index sets of twist-generated
pseudo virtual seeds, a boundary-vanishing test for chains of type I virtual
seeds, and a numerical scan for sign changes of the Wronskian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .darboux import Scenario, wronskian
from .exceptions import NotApplicable
from .jets import Jet
from .potentials import Eckart, Group, HyperbolicPT, Morse
from .seeds import SeedKind


class Verdict(Enum):
    REGULAR = "RegularByCondition"
    SINGULAR = "SingularByCondition"
    NEEDS_SCAN = "NeedsNumericScan"


@dataclass(frozen=True)
class IndexSetAnalysis:
    D: Tuple[int, ...]
    N: int
    barD: Tuple[int, ...]
    verdict: Verdict
    failing_n: Optional[int] = None


def krein_adler_check(D: Iterable[int]) -> IndexSetAnalysis:
    """Product condition ``prod_j (n - e_j) >= 0`` for all ``n >= 0``.

    ``barD = {0..N} minus {N - d : d in D}`` with ``N = max D``.  Checking
    ``n <= N + 1`` suffices since every factor is positive beyond ``N``.
    """
    D = tuple(sorted(int(d) for d in D))
    if not D:
        raise ValueError("D must be non-empty")
    if len(set(D)) != len(D) or D[0] < 0:
        raise ValueError("D must hold distinct non-negative integers")
    N = D[-1]
    removed = {N - d for d in D}
    barD = tuple(e for e in range(N + 1) if e not in removed)
    for n in range(N + 2):
        if np.prod([n - e for e in barD]) < 0:
            return IndexSetAnalysis(D, N, barD, Verdict.SINGULAR, failing_n=n)
    return IndexSetAnalysis(D, N, barD, Verdict.REGULAR)


def scenario_index_analysis(sc: Scenario) -> IndexSetAnalysis:
    """Product-condition verdict for a scenario, or :class:`NotApplicable`.

    Applies only when every seed is a twist-generated pseudo virtual seed of
    one and the same twist.
    """
    if sc.M == 0:
        raise NotApplicable("empty seed list")
    kinds = {(s.origin, s.twist, s.kind) for s in sc.seeds}
    if len(kinds) != 1:
        raise NotApplicable("mixed seed origins or kinds; use nodeless_scan")
    origin, _, kind = kinds.pop()
    if origin != "twist" or kind is not SeedKind.PSEUDO_VIRTUAL:
        raise NotApplicable("the product condition covers twist pseudo virtual seeds only")
    if isinstance(sc.spec, HyperbolicPT):
        # its equivalent deletion sits at g - N - 1 < 1/2, outside the family's range;
        # even-degree seeds can have nodes on x > 0 that the condition does not see
        raise NotApplicable("hyperbolic PT pseudo virtual chains need the numeric scan")
    if isinstance(sc.spec, Eckart) and max(sc.degrees) >= sc.spec.g - 1:
        # the upper pseudo virtual range is not an image of eigenstate deletions
        raise NotApplicable("Eckart degrees v >= g - 1 need the numeric scan")
    return krein_adler_check(sc.degrees)


def _left_boundary(sc: Scenario) -> float:
    if sc.spec.group is Group.A or isinstance(sc.spec, Morse):
        return -12.0
    return 1e-6


def _origin_power(seed, x0: float = 1e-6) -> float:
    """Leading exponent ``p`` of ``seed ~ x^p`` at the origin, from ``x * (log seed)'``."""
    L, P = seed.split(Jet.variable(x0, 1))
    return float(x0 * np.real(L.c[1] + P.c[1] / P.c[0]))


def type1_chain_condition(sc: Scenario, tol: float = 1e-8, x_ref: float = 1.0) -> bool:
    """Each type I seed and its first ``M-1`` derivatives vanish at the left boundary.

    At ``-inf`` (``x = -12``) a derivative counts as zero when it is below
    ``tol`` times the largest of the seed's first ``M`` derivatives at
    ``x_ref``.  At the origin the seed goes like ``x^p`` and the condition is
    ``p > M - 1``.
    """
    if sc.M == 0 or any(s.kind is not SeedKind.VIRTUAL_I for s in sc.seeds):
        raise NotApplicable("type I chain condition needs an all-VirtualI seed list")
    m = sc.M
    xl = _left_boundary(sc)
    for s in sc.seeds:
        if xl > 0:
            if not _origin_power(s, xl) > m - 1 + 1e-6:
                return False
            continue
        ls_b, body_b = s.parts(Jet.variable(xl, max(m - 1, 0)))
        ls_r, body_r = s.parts(Jet.variable(x_ref, max(m - 1, 0)))
        d_b = np.abs(body_b.derivatives()) * np.exp(ls_b)
        d_r = np.abs(body_r.derivatives()) * np.exp(ls_r)
        if np.any(d_b[:m] > tol * np.max(d_r[:m])):
            return False
    return True


@dataclass(frozen=True)
class ScanResult:
    nodeless: bool
    zeros: List[float] = field(default_factory=list)
    grid_points: int = 0


def default_grid(sc: Scenario, points: int = 4001) -> np.ndarray:
    if sc.spec.group is Group.A or isinstance(sc.spec, Morse):
        return np.linspace(-12.0, 12.0, points)
    return np.linspace(1e-4, 12.0, points)


def _sign_w(sc: Scenario, x):
    w = wronskian(sc.seeds, np.atleast_1d(np.asarray(x, dtype=float)), check=False)
    return np.real(w.det), w.rel_scale


def nodeless_scan(sc: Scenario, grid=None, xtol: float = 1e-10) -> ScanResult:
    """Locate real zeros of ``W[seeds]`` on ``grid`` by sign changes plus bisection.

    The log scale factor is positive, so the sign of the scaled determinant is
    the sign of ``W``.  Grid points where ``|W|`` is at roundoff level relative
    to its Hadamard bound are reported as zeros directly.
    """
    grid = default_grid(sc) if grid is None else np.asarray(grid, dtype=float)
    if sc.M == 0:
        return ScanResult(True, [], len(grid))
    det, _ = _sign_w(sc, grid)
    zeros: List[float] = []
    exact = det == 0
    for i in np.flatnonzero(exact):
        zeros.append(float(grid[i]))
    sgn = np.sign(det)
    for i in np.flatnonzero(sgn[:-1] * sgn[1:] < 0):
        if exact[i] or exact[i + 1]:
            continue
        root = brentq(lambda t: float(_sign_w(sc, t)[0][0]), grid[i], grid[i + 1], xtol=xtol)
        zeros.append(float(root))
    zeros.sort()
    return ScanResult(not zeros, zeros, len(grid))


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    method: str
    zeros: List[float]
    index_analysis: Optional[IndexSetAnalysis] = None
    type1_condition: Optional[bool] = None

    @property
    def agrees(self) -> Optional[bool]:
        """Whether the product condition (if it applies) matches the scan."""
        if self.index_analysis is None:
            return None
        return (self.index_analysis.verdict is Verdict.REGULAR) == self.regular


def check_regularity(sc: Scenario, grid=None) -> RegularityReport:
    """Run the scan and, where applicable, the analytic conditions alongside it."""
    scan = nodeless_scan(sc, grid)
    ka = None
    t1 = None
    try:
        ka = scenario_index_analysis(sc)
    except NotApplicable:
        pass
    try:
        t1 = type1_chain_condition(sc)
    except NotApplicable:
        pass
    method = "scan" if ka is None else "scan+product-condition"
    return RegularityReport(scan.nodeless, method, scan.zeros, ka, t1)
