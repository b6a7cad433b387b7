"""Polynomial-type seed solutions: virtual (type I/II), pseudo virtual and
overshoot-derived seeds for each family.

A seed of degree ``v`` is the eigenfunction form evaluated either at twisted
parameters (origin ``"twist"``) or at a degree above ``nmax`` (origin
``"overshoot"``).  Its kind follows from the signs of the asymptotic
exponents, ``phi ~ exp(Delta^+- x)`` as ``x -> +-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from .exceptions import ClassificationBoundary, EmptyRange
from .jets import Jet
from .potentials import (
    Coulomb,
    Eckart,
    Group,
    HyperbolicPT,
    HyperbolicSymTop,
    Morse,
    RosenMorse,
    SolvablePotential,
    Soliton,
    _assert_real,
)

_BOUNDARY_TOL = 1e-9
INF = math.inf


class SeedKind(Enum):
    VIRTUAL_I = "VirtualI"
    VIRTUAL_II = "VirtualII"
    PSEUDO_VIRTUAL = "PseudoVirtual"
    OVERSHOOT_PSEUDO = "OvershootPseudo"

    @property
    def adds_state(self) -> bool:
        return self in (SeedKind.PSEUDO_VIRTUAL, SeedKind.OVERSHOOT_PSEUDO)

    @property
    def is_virtual(self) -> bool:
        return self in (SeedKind.VIRTUAL_I, SeedKind.VIRTUAL_II)


_KIND_ALIASES = {
    "virtuali": SeedKind.VIRTUAL_I,
    "virtual1": SeedKind.VIRTUAL_I,
    "virtual-i": SeedKind.VIRTUAL_I,
    "i": SeedKind.VIRTUAL_I,
    "virtualii": SeedKind.VIRTUAL_II,
    "virtual2": SeedKind.VIRTUAL_II,
    "virtual-ii": SeedKind.VIRTUAL_II,
    "ii": SeedKind.VIRTUAL_II,
    "pseudovirtual": SeedKind.PSEUDO_VIRTUAL,
    "pseudo": SeedKind.PSEUDO_VIRTUAL,
    "pseudo-virtual": SeedKind.PSEUDO_VIRTUAL,
    "overshootpseudo": SeedKind.OVERSHOOT_PSEUDO,
    "overshoot-pseudo": SeedKind.OVERSHOOT_PSEUDO,
}


def parse_kind(name: str) -> SeedKind:
    try:
        return _KIND_ALIASES[name.strip().lower().replace("_", "-")]
    except KeyError:
        raise ValueError(f"unknown seed kind {name!r}") from None


@dataclass(frozen=True)
class Interval:
    """Open interval ``lo < v < hi`` of degrees sharing one seed kind."""

    lo: float
    hi: float
    kind: SeedKind

    def contains(self, v) -> bool:
        return self.lo < v < self.hi

    def degrees(self, floor: int, limit: int = 12) -> List[int]:
        start = max(floor, int(math.floor(self.lo)) + 1 if self.lo > -INF else floor)
        out = []
        v = start
        while v < self.hi and len(out) < limit:
            if self.contains(v) and _boundary_hit(v, (self.lo, self.hi)) is None:
                out.append(v)
            v += 1
        return out

    def describe(self) -> str:
        lo = "-inf" if self.lo == -INF else f"{self.lo:g}"
        hi = "inf" if self.hi == INF else f"{self.hi:g}"
        return f"{lo} < v < {hi}"


def _boundary_hit(v, bounds):
    for b in bounds:
        if math.isfinite(b) and abs(v - b) < _BOUNDARY_TOL:
            return b
    return None


# -- classification tables -----------------------------------------------------------

def twist_intervals(spec: SolvablePotential, twist: str) -> List[Interval]:
    """Degree ranges of the seeds generated by the discrete symmetry ``twist``."""
    if twist not in spec.twists:
        raise KeyError(f"{spec.label} has no twist {twist!r}; choose from {sorted(spec.twists)}")
    P = SeedKind.PSEUDO_VIRTUAL
    if isinstance(spec, (RosenMorse, Soliton, HyperbolicSymTop, Morse)):
        return [Interval(-INF, INF, P)]
    if isinstance(spec, Eckart):
        g, mu = spec.g, spec.mu
        return [
            Interval(-INF, g - 1, P),
            Interval(g - 1, 2 * g - 1, SeedKind.VIRTUAL_II),
            Interval(mu / g + g - 1, INF, P),
        ]
    if isinstance(spec, HyperbolicPT):
        g, h = spec.g, spec.h
        if twist == "h":
            return [Interval(-INF, INF, SeedKind.VIRTUAL_I)]
        if twist == "g":
            return [
                Interval(-INF, g - 0.5, SeedKind.VIRTUAL_II),
                Interval(h - 0.5, INF, SeedKind.OVERSHOOT_PSEUDO),
            ]
        return [Interval(-INF, INF, P)]
    if isinstance(spec, Coulomb):
        g = spec.g
        return [Interval(-INF, g - 1, P), Interval(g - 1, 2 * g - 1, SeedKind.VIRTUAL_II)]
    raise TypeError(type(spec))


def overshoot_intervals(spec: SolvablePotential) -> List[Interval]:
    """Degree ranges (above ``nmax``) where the continued eigenfunction is a seed."""
    if isinstance(spec, RosenMorse):
        h, mu = spec.h, spec.mu
        return [
            Interval(h - mu / h, h, SeedKind.VIRTUAL_II),
            Interval(h, h + mu / h, SeedKind.VIRTUAL_I),
            Interval(2 * h, INF, SeedKind.OVERSHOOT_PSEUDO),
        ]
    if isinstance(spec, (Soliton, HyperbolicSymTop)):
        return [Interval(2 * spec.h, INF, SeedKind.OVERSHOOT_PSEUDO)]
    if isinstance(spec, Morse):
        return [Interval(2 * spec.h, INF, SeedKind.VIRTUAL_I)]
    if isinstance(spec, Eckart):
        g, mu = spec.g, spec.mu
        return [Interval(max(mu / g - g, 2 * g - 1), INF, SeedKind.VIRTUAL_I)]
    if isinstance(spec, HyperbolicPT):
        return [Interval(spec.h - spec.g, spec.h + 0.5, SeedKind.VIRTUAL_I)]
    if isinstance(spec, Coulomb):
        return []
    raise TypeError(type(spec))


def _classify(v, intervals: List[Interval], what: str) -> SeedKind:
    bounds = [b for iv in intervals for b in (iv.lo, iv.hi)]
    hit = _boundary_hit(v, bounds)
    if hit is not None:
        raise ClassificationBoundary(v, hit, what)
    for iv in intervals:
        if iv.contains(v):
            return iv.kind
    raise EmptyRange(f"degree v={v} lies in no {what} seed range "
                     f"({', '.join(iv.describe() for iv in intervals) or 'none exist'})")


# -- seed objects ---------------------------------------------------------------------

@dataclass(frozen=True)
class SeedSolution:
    """A seed solution ``phi~_v`` of the original Schroedinger equation at ``energy``."""

    spec: SolvablePotential
    kind: SeedKind
    degree: int
    energy: float
    delta_plus: float
    delta_minus: Optional[float]
    origin: str
    twist: Optional[str] = None
    form_params: Dict[str, float] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        e0 = self.spec.energy(0)
        if not self.energy < e0:
            raise EmptyRange(
                f"seed energy {self.energy:.6g} is not below the ground state {e0:.6g}"
            )

    @property
    def label(self) -> str:
        tw = f"[{self.twist}]" if self.twist else ""
        return f"{self.origin}{tw}:{self.degree} ({self.kind.value})"

    @property
    def token(self) -> str:
        """Compact ``origin[:twist]:degree`` descriptor used by scenario files."""
        if self.origin == "twist" and self.twist != _default_twist(self.spec):
            return f"twist-{self.twist}:{self.degree}"
        return f"{self.origin}:{self.degree}"

    def parts(self, x, order=None) -> Tuple[np.ndarray, Jet]:
        """``(log_scale, body)`` with ``seed = exp(log_scale) * body`` and a real body."""
        ls, body = self.spec.form_parts(
            self.degree, x, p=self.form_params, order=order, seed=True
        )
        return ls, _assert_real(body)

    def split(self, x, order=None) -> Tuple[Jet, Jet]:
        """``(L, P)`` with ``seed = exp(L) * P``; ``P`` is the (real) polynomial part."""
        L, P = self.spec.form_split(self.degree, x, p=self.form_params, order=order, seed=True)
        return L, _assert_real(P)

    def value(self, x, order=None):
        was_jet = isinstance(x, Jet)
        ls, body = self.parts(x, order=order if was_jet or order is not None else 0)
        f = body * np.exp(ls)
        if was_jet:
            return f
        return f.value[()] if np.ndim(f.value) == 0 else f.value

    __call__ = value


def _default_twist(spec) -> str:
    return next(iter(spec.twists))


def make_twist_seed(spec: SolvablePotential, v: int, twist: Optional[str] = None) -> SeedSolution:
    """Seed from the discrete parameter symmetry ``twist`` at degree ``v``."""
    if v < 0 or int(v) != v:
        raise ValueError("seed degree must be a non-negative integer")
    v = int(v)
    twist = _default_twist(spec) if twist is None else twist
    kind = _classify(v, twist_intervals(spec, twist), f"twist-{twist}")
    p = spec.twist_params(twist)
    dp, dm = spec.exponents(v, p)
    return SeedSolution(
        spec=spec,
        kind=kind,
        degree=v,
        energy=spec.form_energy(v, p),
        delta_plus=dp,
        delta_minus=dm,
        origin="twist",
        twist=twist,
        form_params=p,
    )


def make_overshoot_seed(spec: SolvablePotential, v: int) -> SeedSolution:
    """Eigenfunction form continued to a degree ``v > nmax``."""
    if int(v) != v:
        raise ValueError("seed degree must be an integer")
    v = int(v)
    nm = spec.nmax()
    if nm is None or v <= nm:
        if nm is None:
            raise EmptyRange(f"{spec.label} has no overshoot seeds")
        raise ValueError(f"v={v} is an eigenstate (nmax={nm}); overshoot needs v > nmax")
    kind = _classify(v, overshoot_intervals(spec), "overshoot")
    dp, dm = spec.exponents(v)
    return SeedSolution(
        spec=spec,
        kind=kind,
        degree=v,
        energy=spec.form_energy(v),
        delta_plus=dp,
        delta_minus=dm,
        origin="overshoot",
        twist=None,
        form_params=dict(spec.params),
    )


def make_seed(spec: SolvablePotential, origin: str, v: int, twist: Optional[str] = None):
    """Dispatch on ``origin``; also accepts a seed-kind name, resolved uniquely."""
    o = origin.strip().lower()
    if o == "twist":
        return make_twist_seed(spec, v, twist)
    if o.startswith("twist-"):
        return make_twist_seed(spec, v, o.split("-", 1)[1])
    if o == "overshoot":
        return make_overshoot_seed(spec, v)
    kind = parse_kind(origin)
    matches = []
    twists = [twist] if twist else list(spec.twists)
    for tw in twists:
        try:
            s = make_twist_seed(spec, v, tw)
        except (EmptyRange, ClassificationBoundary, ZeroDivisionError):
            continue
        if s.kind is kind:
            matches.append(s)
    if twist is None:
        try:
            s = make_overshoot_seed(spec, v)
            if s.kind is kind:
                matches.append(s)
        except (EmptyRange, ClassificationBoundary, ValueError):
            pass
    if not matches:
        raise EmptyRange(f"no {kind.value} seed of degree {v} for {spec!r}")
    if len(matches) > 1:
        opts = ", ".join(m.token for m in matches)
        raise ValueError(f"{kind.value} seed of degree {v} is ambiguous ({opts}); name the origin")
    return matches[0]


def seed_value(seed: SeedSolution, x):
    return seed.value(x)


def asymptotic_exponent_check(seed: SeedSolution, side: str = "plus", x_far: float = 12.0) -> float:
    """Numerical log-derivative of the seed at ``|x| = x_far``.

    For Coulomb seeds the power factor ``x^(g'+v)`` is divided out first and
    the remaining ``1/x^2`` tail is removed by one Richardson step (``x_far, 2 x_far``).
    """
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    if side == "minus" and seed.spec.group is not Group.A:
        raise ValueError("the minus side exists only on the full line")
    x0 = x_far if side == "plus" else -x_far
    if not isinstance(seed.spec, Coulomb):
        return _logderiv(seed, x0)
    # polynomial factor leaves q/x + c/x^2 + ...: remove q/x, then Richardson on 1/x^2
    q = seed.spec.power_correction(seed.degree, seed.form_params)
    l1 = _logderiv(seed, x0) - q / x0
    l2 = _logderiv(seed, 2 * x0) - q / (2 * x0)
    return (4.0 * l2 - l1) / 3.0


def _logderiv(seed, x0) -> float:
    _, body = seed.parts(Jet.variable(x0, 1))
    return float(body.c[1] / body.c[0])


@dataclass(frozen=True)
class SeedRange:
    origin: str
    twist: Optional[str]
    interval: Interval
    degrees: Tuple[int, ...]


def admissible_ranges(spec: SolvablePotential, limit: int = 8) -> List[SeedRange]:
    """Every seed family of ``spec`` with the first few admissible integer degrees."""
    out = []
    for tw in spec.twists:
        for iv in twist_intervals(spec, tw):
            degs = tuple(v for v in iv.degrees(0, limit) if _constructible(spec, "twist", v, tw))
            out.append(SeedRange("twist", tw, iv, degs))
    nm = spec.nmax()
    for iv in overshoot_intervals(spec):
        degs = tuple(
            v for v in iv.degrees(nm + 1, limit) if _constructible(spec, "overshoot", v, None)
        )
        out.append(SeedRange("overshoot", None, iv, degs))
    return out


def _constructible(spec, origin, v, tw) -> bool:
    try:
        make_seed(spec, origin, v, tw)
    except (EmptyRange, ClassificationBoundary, ZeroDivisionError, ValueError):
        return False
    return True


def sign_pattern_ok(seed: SeedSolution) -> bool:
    """Exponent signs agree with the kind (half line: only ``Delta^+`` is constrained)."""
    dp, dm = seed.delta_plus, seed.delta_minus
    k = seed.kind
    if k is SeedKind.VIRTUAL_I:
        want = (dp > 0, dm is None or dm > 0)
    elif k is SeedKind.VIRTUAL_II:
        want = (dp < 0, dm is None or dm < 0)
    else:
        want = (dp > 0, dm is None or dm < 0)
    return all(want)

