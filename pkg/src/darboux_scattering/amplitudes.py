"""Deformed scattering amplitudes and their pole/zero structure.

Each seed multiplies the original amplitudes by a rational factor in ``k``
fixed by its asymptotic exponents alone.  For real ``k`` these factors are
unimodular, so transmission and reflection probabilities are unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from .darboux import Scenario
from .exceptions import PoleHit, UncancelledPole
from .potentials import (
    Eckart,
    Group,
    HyperbolicPT,
    HyperbolicSymTop,
    Morse,
    RosenMorse,
    SolvablePotential,
    kprime,
)
from .seeds import SeedKind, SeedSolution

POLE_HIT_TOL = 1e-12
PROBE_RADII = (1e-4, 1e-6, 1e-8)
POLE_GROWTH_RATIO = 1e3


@dataclass(frozen=True)
class DeformedAmplitudes:
    k: np.ndarray
    t_D: Optional[np.ndarray]
    r_D: np.ndarray
    t: Optional[np.ndarray]
    r: np.ndarray
    factors_t: List[np.ndarray] = field(default_factory=list)
    factors_r: List[np.ndarray] = field(default_factory=list)
    sheet_ambiguous: bool = False


def _check_den(den, k):
    if np.any(np.abs(den) < POLE_HIT_TOL):
        bad = np.atleast_1d(k)[np.flatnonzero(np.atleast_1d(np.abs(den) < POLE_HIT_TOL))[0]]
        raise PoleHit(complex(bad))


def seed_factors(spec: SolvablePotential, seed: SeedSolution, k):
    """``(t factor, r factor)`` contributed by one seed (t factor None off group A)."""
    k = np.asarray(k, dtype=complex)
    dp, dm = seed.delta_plus, seed.delta_minus
    if spec.group is Group.A:
        den = k + 1j * dm
        _check_den(den, k)
        top = (kprime(k, spec.mu) if isinstance(spec, RosenMorse) else k) + 1j * dp
        return top / den, -(k - 1j * dm) / den
    den = k - 1j * dp
    _check_den(den, k)
    return None, -(k + 1j * dp) / den


def deform_amplitudes(sc: Scenario, k) -> DeformedAmplitudes:
    """Original amplitudes times the product of per-seed factors."""
    k = np.asarray(k, dtype=complex)
    base = sc.spec.original_amplitudes(k)
    ft, fr = [], []
    t_d = None if base.t is None else np.array(base.t, dtype=complex)
    r_d = np.array(base.r, dtype=complex)
    for s in sc.seeds:
        a, b = seed_factors(sc.spec, s, k)
        fr.append(b)
        r_d = r_d * b
        if a is not None:
            ft.append(a)
            t_d = t_d * a
    ambiguous = sc.spec.has_kprime and bool(
        np.any((np.abs(k.imag) > 0) & (np.abs(k.real) > 0))
    )
    if k.ndim == 0:
        t_d = None if t_d is None else t_d[()]
        r_d = r_d[()]
    return DeformedAmplitudes(k, t_d, r_d, base.t, base.r, ft, fr, ambiguous)


@dataclass(frozen=True)
class InvarianceReport:
    max_dev_t: Optional[float]
    max_dev_r: float
    max_factor_dev: float
    passed: bool


def invariance_check(sc: Scenario, k_grid, tol: float = 1e-12) -> InvarianceReport:
    """``| |t_D| - |t| |`` and ``| |r_D| - |r| |`` over a real grid (plus factor moduli)."""
    k = np.asarray(k_grid, dtype=float)
    d = deform_amplitudes(sc, k)
    dev_r = float(np.max(np.abs(np.abs(d.r_D) - np.abs(d.r)))) if k.size else 0.0
    dev_t = None
    if d.t_D is not None:
        dev_t = float(np.max(np.abs(np.abs(d.t_D) - np.abs(d.t))))
    fdev = 0.0
    for f in d.factors_r + d.factors_t:
        fr = np.asarray(f)
        if isinstance(sc.spec, RosenMorse) and f is not None and any(f is g for g in d.factors_t):
            # the k' numerator is unimodular only once k' is real
            fr = fr[k ** 2 > 4 * sc.spec.mu]
        if fr.size:
            fdev = max(fdev, float(np.max(np.abs(np.abs(fr) - 1.0))))
    if isinstance(sc.spec, RosenMorse):
        # |t| itself is only compared where both sides propagate
        open_ch = k ** 2 > 4 * sc.spec.mu
        if d.t_D is not None and np.any(open_ch):
            dev_t = float(np.max(np.abs(np.abs(d.t_D[open_ch]) - np.abs(d.t[open_ch]))))
    worst = max(dev_r, dev_t or 0.0, fdev)
    return InvarianceReport(dev_t, dev_r, fdev, worst < tol)


# -- poles and zeros -------------------------------------------------------------------

class PoleKind(Enum):
    EIGEN = "EigenPole"
    CANCELLED = "CancelledPole"
    SPURIOUS = "SpuriousLowerHalf"
    ZERO = "Zero"
    QNM = "QuasinormalMode"


@dataclass(frozen=True)
class ProbeResult:
    center: complex
    radii: tuple
    max_abs: tuple

    @property
    def growth(self) -> float:
        """Ratio of the innermost to the outermost circle maximum."""
        return self.max_abs[-1] / max(self.max_abs[0], 1e-300)

    @property
    def bounded(self) -> bool:
        # removable: the maximum settles instead of scaling like 1/radius
        return self.growth < 10.0

    @property
    def grows(self) -> bool:
        return self.growth > POLE_GROWTH_RATIO


@dataclass(frozen=True)
class PoleZeroRecord:
    k: complex
    kind: PoleKind
    provenance: str
    energy: Optional[float] = None
    cancelled_by: Optional[str] = None
    probe: Optional[ProbeResult] = None

    def as_dict(self):
        out = {
            "k_re": self.k.real,
            "k_im": self.k.imag,
            "kind": self.kind.value,
            "provenance": self.provenance,
        }
        if self.energy is not None:
            out["energy"] = self.energy
        if self.cancelled_by:
            out["cancelled_by"] = self.cancelled_by
        if self.probe is not None:
            out["probe_max_abs"] = list(self.probe.max_abs)
        return out


def probe_pole(sc: Scenario, center: complex, radii: Sequence[float] = PROBE_RADII,
               n_points: int = 16) -> ProbeResult:
    """Largest ``|t_D|`` or ``|r_D|`` on circles of shrinking radius around ``center``.

    A cancelled (removable) pole stays bounded; a genuine simple pole grows
    like ``1/radius``.
    """
    theta = 2 * np.pi * (np.arange(n_points) + 0.5) / n_points
    out = []
    for rad in radii:
        ks = center + rad * np.exp(1j * theta)
        d = deform_amplitudes(sc, ks)
        m = np.abs(d.r_D)
        if d.t_D is not None:
            m = np.maximum(m, np.abs(d.t_D))
        out.append(float(np.max(m)))
    return ProbeResult(complex(center), tuple(radii), tuple(out))


def _cancellation_source(spec: SolvablePotential, kind: SeedKind) -> str:
    if isinstance(spec, RosenMorse):
        return "numerator factor k' - i alpha_v (k'^2 + alpha_v^2 = k^2 + beta_v^2)"
    if isinstance(spec, Morse):
        return "zero of 1/Gamma(-h+ik)"
    if isinstance(spec, Eckart):
        return "zero of 1/Gamma(g+ik/2+ik'/2)"
    if isinstance(spec, HyperbolicPT):
        return "zero of 1/Gamma((1+h+g+ik)/2) or 1/Gamma((g-h+ik)/2)"
    return "zero of a base Gamma factor"


def _seed_records(sc: Scenario, s: SeedSolution, verify: bool) -> List[PoleZeroRecord]:
    spec = sc.spec
    recs = []
    tag = f"seed {s.token} ({s.kind.value})"
    if spec.group is Group.A:
        kp = complex(-1j * s.delta_minus)
        zeros = [complex(1j * s.delta_minus)]
        zt = complex(-1j * s.delta_plus)
        if not isinstance(spec, RosenMorse) and abs(zt - zeros[0]) > 1e-12:
            zeros.append(zt)
    else:
        kp = complex(1j * s.delta_plus)
        zeros = [complex(-1j * s.delta_plus)]
    if kp.imag < 0:
        recs.append(PoleZeroRecord(kp, PoleKind.SPURIOUS, tag))
    elif s.kind.adds_state:
        pr = probe_pole(sc, kp) if verify else None
        recs.append(PoleZeroRecord(kp, PoleKind.EIGEN, tag, energy=-(kp.imag ** 2), probe=pr))
    else:
        pr = probe_pole(sc, kp)
        if not pr.bounded:
            raise UncancelledPole(kp, max(pr.max_abs))
        recs.append(
            PoleZeroRecord(kp, PoleKind.CANCELLED, tag,
                           cancelled_by=_cancellation_source(spec, s.kind), probe=pr)
        )
    for z in zeros:
        recs.append(PoleZeroRecord(z, PoleKind.ZERO, tag))
    return recs


def pole_catalog(sc: Scenario, n_cut: int = 5, verify: bool = True) -> List[PoleZeroRecord]:
    """All poles and zeros of the deformed amplitudes tied to the spectrum and the seeds.

    Upper-half-plane poles of virtual seeds must be removable; this is checked
    numerically and :class:`UncancelledPole` is raised otherwise.
    """
    spec = sc.spec
    recs: List[PoleZeroRecord] = []
    for n in spec.levels(n_cut):
        e = spec.energy(n)
        kb = complex(0.0, math.sqrt(-e))
        pr = probe_pole(sc, kb) if verify else None
        recs.append(PoleZeroRecord(kb, PoleKind.EIGEN, f"bound state n={n}", energy=e, probe=pr))
    for s in sc.seeds:
        recs.extend(_seed_records(sc, s, verify))
    if isinstance(spec, HyperbolicSymTop):
        for q in spec.quasinormal_modes(n_cut):
            pr = probe_pole(sc, q) if verify else None
            recs.append(PoleZeroRecord(q, PoleKind.QNM, "family", probe=pr))
    return recs


def eigen_poles(catalog: Sequence[PoleZeroRecord]) -> List[PoleZeroRecord]:
    return [r for r in catalog if r.kind is PoleKind.EIGEN]


# -- shape invariance ----------------------------------------------------------------

@dataclass(frozen=True)
class ShapeInvarianceReport:
    family: str
    params: dict
    shifted_params: dict
    shifted_in_range: bool
    residual_t: Optional[float]
    residual_r: float

    @property
    def residual(self) -> float:
        return max(self.residual_r, self.residual_t or 0.0)


def _rel(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)
    return float(np.max(np.abs(a - b) / scale))


def shape_invariance_suite(spec: SolvablePotential, k_grid) -> ShapeInvarianceReport:
    """Residuals of the parameter-shift identities relating amplitudes at ``lambda`` and ``lambda + delta``.

    Full line: ``t(lambda+delta) = (ik + W+)/(ik + W-) t`` (``ik'`` in the numerator
    when the right asymptote differs) and ``r(lambda+delta) = (-ik + W-)/(ik + W-) r``.
    Half line: ``r(lambda+delta) = (ik + W+)/(-ik + W+) r``.  ``W+-`` are taken at ``lambda``.
    """
    k = np.asarray(k_grid, dtype=complex)
    shifted = spec.shifted(validate=False)
    in_range = shifted._in_range(shifted.params)
    wp, wm = spec.groundstate_exponents()
    a0 = spec.original_amplitudes(k)
    a1 = shifted.original_amplitudes(k)
    if spec.group is Group.A:
        top = 1j * (kprime(k, spec.mu) if isinstance(spec, RosenMorse) else k) + wp
        res_t = _rel(a1.t, top / (1j * k + wm) * a0.t)
        res_r = _rel(a1.r, (-1j * k + wm) / (1j * k + wm) * a0.r)
    else:
        res_t = None
        res_r = _rel(a1.r, (1j * k + wp) / (-1j * k + wp) * a0.r)
    return ShapeInvarianceReport(spec.tag, dict(spec.params), dict(shifted.params), in_range,
                                 res_t, res_r)
