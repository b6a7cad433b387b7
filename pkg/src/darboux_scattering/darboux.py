"""Wronskian chains and the Darboux-Crum deformed quantities.

Every function handed to :func:`wronskian` exposes ``parts(x_jet)`` returning
``(log_scale, body)`` with ``f = exp(log_scale) * body``.  The Wronskian of
the bodies is computed in jet arithmetic, so ``W``, ``W'`` and ``W''`` come
out exactly (no finite differences); the log scales are added back in log
space, which keeps exponents like ``exp((h+1+v) x)`` from overflowing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from . import jets
from .exceptions import ZeroWronskian
from .jets import Jet, _div, _mul
from .potentials import Group, Morse, SolvablePotential, _assert_real, kprime
from .seeds import SeedSolution, make_seed

ZERO_REL_TOL = 1e-13
STRATEGIES = ("lu", "cofactor", "crum")


# -- scenario ----------------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    """A potential plus an ordered list of seeds ``D = (d_1, ..., d_M)``."""

    spec: SolvablePotential
    seeds: Tuple[SeedSolution, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(self.seeds))
        seen = set()
        for s in self.seeds:
            if s.spec != self.spec:
                raise ValueError("every seed must belong to the scenario's potential")
            key = (s.origin, s.twist, s.degree)
            if key in seen:
                raise ValueError(f"seed {s.token} appears twice")
            seen.add(key)

    @classmethod
    def build(cls, spec: SolvablePotential, descriptors: Iterable = ()) -> "Scenario":
        """``descriptors`` holds ``(origin, degree)`` or ``(origin, degree, twist)`` tuples."""
        seeds = []
        for d in descriptors:
            origin, v, *rest = d
            seeds.append(make_seed(spec, origin, v, rest[0] if rest else None))
        return cls(spec, tuple(seeds))

    @property
    def M(self) -> int:
        return len(self.seeds)

    @property
    def degrees(self) -> List[int]:
        return [s.degree for s in self.seeds]

    @property
    def seed_energies(self) -> List[float]:
        return [s.energy for s in self.seeds]

    def __repr__(self):
        return f"Scenario({self.spec!r}, [{', '.join(s.token for s in self.seeds)}])"


# -- Wronskian -----------------------------------------------------------------------

@dataclass(frozen=True)
class WronskianEval:
    """``W = det * exp(logscale)`` with log-derivatives of ``W``."""

    det: np.ndarray
    logscale: np.ndarray
    logderiv1: np.ndarray
    logderiv2: np.ndarray
    rel_scale: np.ndarray
    jet: Optional[Jet] = None

    @property
    def value(self):
        with np.errstate(over="ignore"):
            return self.det * np.exp(self.logscale)

    @property
    def log_abs(self):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.det)) + self.logscale


class _Eigen:
    """Adapter exposing an eigenfunction through the ``parts`` protocol."""

    def __init__(self, spec: SolvablePotential, n: int):
        self.spec, self.n = spec, n

    def parts(self, x, order=None):
        ls, body = self.spec.form_parts(self.n, x, order=order)
        return ls, _assert_real(body)

    def split(self, x, order=None):
        L, P = self.spec.form_split(self.n, x, order=order)
        return L, _assert_real(P)


def _entry_jets(funcs, x0, order):
    """Gauged bodies ``exp(L_j - G - c_j) P_j`` with ``G`` the mean log-prefactor.

    Returns ``(logscale, gauge, bodies)`` where ``W = exp(logscale) *
    exp(M (G - G(x0))) * W[bodies]``.  Removing the common part of the
    prefactors keeps large shared exponentials out of the determinant.
    """
    xj = Jet.variable(x0, order)
    Ls, Ps = [], []
    for f in funcs:
        if hasattr(f, "split"):
            L, P = f.split(xj)
        else:
            ls, P = f.parts(xj)
            L = Jet.constant(ls, order, np.shape(x0))
        Ls.append(L)
        Ps.append(P)
    m = len(funcs)
    G = Ls[0]
    for L in Ls[1:]:
        G = G + L
    G = G * (1.0 / m)
    G0 = G.value.copy()
    logscale = m * G0
    bodies = []
    for L, P in zip(Ls, Ps):
        d = L - G
        c = d.value.copy()
        logscale = logscale + c
        bodies.append(jets.exp(d - c) * P)
    gauge = jets.exp((G - G0) * float(m))
    return logscale, gauge, bodies


def _det_cofactor(mat: List[List[Jet]]) -> Jet:
    m = len(mat)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: Tuple[int, ...]) -> Jet:
        if row == m - 1:
            return mat[row][cols[0]]
        acc = None
        for pos, c in enumerate(cols):
            rest = cols[:pos] + cols[pos + 1:]
            term = mat[row][c] * minor(row + 1, rest)
            if pos % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    return minor(0, tuple(range(m)))


def _det_lu(mat: List[List[Jet]]) -> Jet:
    m = len(mat)
    K = mat[0][0].c.shape[0]
    shape = np.broadcast_shapes(*(e.shape for row in mat for e in row))
    dtype = np.result_type(*(e.c for row in mat for e in row))
    A = np.zeros((K, m, m) + shape, dtype=dtype)
    for i in range(m):
        for j in range(m):
            A[:, i, j] = mat[i][j].c
    sign = np.ones(shape)
    for j in range(m):
        piv = j + np.argmax(np.abs(A[0, j:, j]), axis=0)
        swap = piv != j
        if np.any(swap):
            perm = np.broadcast_to(np.arange(m).reshape((m,) + (1,) * len(shape)), (m,) + shape).copy()
            # exchange rows j and piv pointwise
            rows_at_piv = (np.arange(m).reshape((m,) + (1,) * len(shape)) == piv)
            perm = np.where(rows_at_piv, j, perm)
            perm[j] = piv
            idx = np.broadcast_to(perm[None, :, None], A.shape)
            A = np.take_along_axis(A, idx, axis=1)
            sign = np.where(swap, -sign, sign)
        pivot = A[:, j, j]
        for i in range(j + 1, m):
            f = _div(A[:, i, j], pivot)
            A[:, i, j:] = A[:, i, j:] - _mul(f[:, None], A[:, j, j:])
    det = A[:, 0, 0]
    for j in range(1, m):
        det = _mul(det, A[:, j, j])
    return Jet(det * sign)


def _det_crum(bodies: List[Jet]) -> Jet:
    """``W[f_1..f_M] = f_1 W[g_2..g_M]`` with ``g_j = f_1 f_j' - f_1' f_j`` over ``f_1``."""
    if len(bodies) == 1:
        return bodies[0].truncate(2)
    f1 = bodies[0]
    d1 = f1.derivative()
    f1t = f1.truncate(f1.order - 1)
    gs = [(f1t * fj.derivative() - d1 * fj.truncate(fj.order - 1)) / f1t for fj in bodies[1:]]
    return f1.truncate(2) * _det_crum(gs)


def wronskian(funcs: Sequence, x, strategy: str = "lu", check: bool = True) -> WronskianEval:
    """Wronskian ``W[f_1, ..., f_M](x)`` with its first two log-derivatives.

    ``strategy`` picks the determinant algorithm: ``"lu"`` (pivoted
    elimination), ``"cofactor"`` (memoised Laplace expansion) or ``"crum"``
    (iterated two-term reduction; unreliable at zeros of ``f_1``).  With
    ``check`` set, :class:`ZeroWronskian` is raised where ``|W|`` drops below
    1e-13 of its Hadamard bound.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    x0 = np.asarray(x, dtype=float)
    m = len(funcs)
    if m == 0:
        one = np.ones(x0.shape)
        zero = np.zeros(x0.shape)
        return WronskianEval(one, zero, zero, zero, one, Jet.constant(1.0, 2, x0.shape))
    order = m + 1
    ls, gauge, bodies = _entry_jets(funcs, x0, order)
    mat = [[b.derivative(i).truncate(2) for b in bodies] for i in range(m)]
    if strategy == "lu":
        det = _det_lu(mat)
    elif strategy == "cofactor":
        det = _det_cofactor(mat)
    else:
        det = _det_crum(bodies)
    det = det * gauge.truncate(2)
    c = det.c
    with np.errstate(divide="ignore", invalid="ignore"):
        l1 = c[1] / c[0]
        l2 = 2.0 * c[2] / c[0] - l1 * l1
        # one derivative beyond the matrix rows keeps the bound nonzero at nodes (M = 1)
        dv = [np.abs(b.derivatives()[: m + 1]) for b in bodies]
        col_norms = [np.sqrt(np.sum(d ** 2, axis=0)) for d in dv]
        hadamard = np.prod(np.stack(col_norms), axis=0)
        rel = np.abs(c[0]) / hadamard
    if check and np.any(~(rel >= ZERO_REL_TOL)):
        bad = np.flatnonzero(~(np.atleast_1d(rel) >= ZERO_REL_TOL))[0]
        raise ZeroWronskian(float(np.atleast_1d(x0)[bad]))
    return WronskianEval(c[0], ls, l1, l2, rel, det)


# -- deformed quantities ----------------------------------------------------------------

def deformed_potential(sc: Scenario, x, strategy: str = "lu", check: bool = True):
    """``U^[M](x) = U(x) - 2 d^2/dx^2 log|W[seeds](x)|``."""
    x0 = np.asarray(x, dtype=float)
    u = sc.spec.potential(x0)
    if sc.M == 0:
        return u
    w = wronskian(sc.seeds, x0, strategy=strategy, check=check)
    out = u - 2.0 * np.real(w.logderiv2)
    return out[()] if np.ndim(out) == 0 else out


def _ratio(num: WronskianEval, den: WronskianEval, jet: bool):
    scale = np.exp(num.logscale - den.logscale)
    q = (num.jet / den.jet) * scale
    if jet:
        return q
    v = q.value
    return v[()] if np.ndim(v) == 0 else v


def deformed_eigenfunction(sc: Scenario, n: int, x, jet: bool = False, strategy="lu"):
    """``W[seeds, phi_n] / W[seeds]``; an order-2 Jet when ``jet`` is set."""
    nm = sc.spec.nmax()
    if n < 0 or (nm is not None and n > nm):
        raise IndexError(f"n={n} outside 0..{nm}")
    x0 = np.asarray(x, dtype=float)
    num = wronskian(list(sc.seeds) + [_Eigen(sc.spec, n)], x0, strategy=strategy, check=False)
    den = wronskian(sc.seeds, x0, strategy=strategy)
    return _ratio(num, den, jet)


class ScatteringSolution:
    """Base scattering solution of the original equation at ``E = k^2``.

    Full line: the purely transmitted wave ``exp(i k' x)`` continued leftward.
    Half line: the solution regular at the origin (or decaying into the Morse
    barrier).  Values come from a tight-tolerance ODE solve; higher Taylor
    coefficients follow from ``psi'' = (U - E) psi``.
    """

    def __init__(self, spec: SolvablePotential, k: float, x_span: Tuple[float, float]):
        from scipy.integrate import solve_ivp

        self.spec, self.k = spec, float(k)
        self.E = self.k ** 2
        lo, hi = x_span

        def rhs(x, y):
            u = spec.potential(x)
            psi = y[0] + 1j * y[1]
            d = y[2] + 1j * y[3]
            dd = (u - self.E) * psi
            return [d.real, d.imag, dd.real, dd.imag]

        if spec.group is Group.A:
            u_r = spec.asymptote("plus")
            kp = complex(kprime(self.k, u_r / 4.0)) if u_r else complex(self.k)
            x_start, x_end = hi, lo
            psi0 = np.exp(1j * kp * x_start)
            dpsi0 = 1j * kp * psi0
        elif isinstance(spec, Morse):
            x_start = min(lo, -math.log(20.0 / spec.mu))
            x_end = hi
            kap = math.sqrt(max(spec.potential(x_start) - self.E, 1e-12))
            psi0, dpsi0 = 1e-8 + 0j, 1e-8 * kap + 0j
        else:
            x_start = 1e-4
            x_end = hi
            c = x_start ** 2 * spec.potential(x_start)
            p = 0.5 + math.sqrt(0.25 + c)
            psi0, dpsi0 = x_start ** p + 0j, p * x_start ** (p - 1) + 0j
        y0 = [psi0.real, psi0.imag, dpsi0.real, dpsi0.imag]
        self._sol = solve_ivp(
            rhs, (x_start, x_end), y0, method="DOP853", rtol=1e-12, atol=1e-14, dense_output=True
        )
        if not self._sol.success:
            raise RuntimeError(self._sol.message)

    def parts(self, x: Jet, order=None):
        x0 = np.asarray(x.value, dtype=float)
        y = self._sol.sol(x0.reshape(-1))
        psi = (y[0] + 1j * y[1]).reshape(x0.shape)
        dpsi = (y[2] + 1j * y[3]).reshape(x0.shape)
        n = x.order
        u = self.spec.potential(Jet.variable(x0, max(n - 2, 0)))
        f = u - self.E
        c = np.zeros((n + 1,) + x0.shape, dtype=complex)
        c[0] = psi
        if n >= 1:
            c[1] = dpsi
        for kk in range(n - 1):
            acc = sum(f.c[j] * c[kk - j] for j in range(min(kk, f.order) + 1))
            c[kk + 2] = acc / ((kk + 1) * (kk + 2))
        return np.zeros(x0.shape), Jet(c)


def deformed_scattering_wave(sc: Scenario, k: float, x, jet: bool = False, base=None):
    """``W[seeds, psi_k] / W[seeds]`` for the base scattering solution ``psi_k``."""
    x0 = np.asarray(x, dtype=float)
    if base is None:
        lo = float(np.min(x0)) - 1.0
        hi = float(np.max(x0)) + 1.0
        if sc.spec.half_line:
            lo = max(lo, 1e-4)
        base = ScatteringSolution(sc.spec, k, (lo, max(hi, 12.0)))
    num = wronskian(list(sc.seeds) + [base], x0, check=False)
    den = wronskian(sc.seeds, x0)
    return _ratio(num, den, jet)


def norm_ratio(sc: Scenario, n: int) -> float:
    """``prod_j (E_n - E~_{d_j})``: squared norm of the deformed state over that of phi_n."""
    e = sc.spec.energy(n)
    return float(np.prod([e - s.energy for s in sc.seeds])) if sc.seeds else 1.0


def _quad_range(spec: SolvablePotential):
    if spec.group is Group.C:
        return 1e-12, 200.0
    if spec.half_line:
        return 1e-12, 60.0
    if isinstance(spec, Morse):
        return -8.0, 60.0
    return -40.0, 40.0


def quadrature_norm_ratio(sc: Scenario, n: int) -> float:
    """``||phi^[M]_n||^2 / ||phi_n||^2`` by adaptive quadrature (test oracle for :func:`norm_ratio`)."""
    lo, hi = _quad_range(sc.spec)
    pts = np.linspace(lo, hi, 41)[1:-1]

    def num(x):
        return float(np.real(deformed_eigenfunction(sc, n, x))) ** 2

    def den(x):
        return float(sc.spec.eigenfunction(n, x)) ** 2

    kw = dict(points=pts, limit=400, epsabs=0.0, epsrel=1e-11)
    a = integrate.quad(num, lo, hi, **kw)[0]
    b = integrate.quad(den, lo, hi, **kw)[0]
    return a / b


def overlap(sc: Scenario, n: int, m: int) -> float:
    """``<phi^[M]_n, phi^[M]_m>`` by adaptive quadrature."""
    lo, hi = _quad_range(sc.spec)
    pts = np.linspace(lo, hi, 41)[1:-1]

    def f(x):
        return float(np.real(deformed_eigenfunction(sc, n, x) * deformed_eigenfunction(sc, m, x)))

    with warnings.catch_warnings():
        # the integral is ~0 for n != m, so the relative target is unreachable by design
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(f, lo, hi, points=pts, limit=400, epsabs=1e-13)[0]


def schrodinger_residual(sc: Scenario, f_jet: Jet, x, energy) -> np.ndarray:
    """Pointwise ``(-f'' + U^[M] f - E f)`` relative to the size of its terms."""
    x0 = np.asarray(x, dtype=float)
    u = deformed_potential(sc, x0)
    d = f_jet.derivatives()
    r = -d[2] + (u - energy) * d[0]
    scale = np.abs(d[2]) + np.abs(u * d[0]) + abs(energy) * np.abs(d[0]) + 1e-300
    return np.abs(r) / scale

