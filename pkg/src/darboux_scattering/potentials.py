"""The seven shape-invariant scattering potentials.

Each family provides the potential, its discrete spectrum and eigenfunctions,
the closed-form scattering amplitudes and the groundstate exponents.  The
eigenfunction *form* is exposed for arbitrary (possibly twisted or out of
range) parameters so that seed solutions can reuse it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Dict, Optional, Tuple

import numpy as np

from . import jets
from .exceptions import BranchError, DomainError, ParameterRangeError, ScatteringError
from .jets import Jet
from .specfun import jacobi_P, laguerre_L, log_gamma, rgamma


class Group(Enum):
    A = "A-full-line"
    B = "B-half-line"
    C = "C-coulomb"


class RealnessViolation(ScatteringError, AssertionError):
    """A quantity that must be real came out with a sizeable imaginary part."""


@dataclass(frozen=True)
class EigenState:
    n: int
    energy: float
    alpha: Optional[float] = None
    beta: Optional[float] = None


@dataclass(frozen=True)
class OriginalAmplitudes:
    """Amplitudes at one or many wavenumbers (``t`` is None on the half line)."""

    t: Optional[np.ndarray]
    r: np.ndarray
    kprime: Optional[np.ndarray] = None


def bracket_prime(a: float) -> int:
    """Greatest integer strictly below ``a`` (so ``[2]' = 1``)."""
    return int(math.ceil(a)) - 1


def kprime(k, mu):
    """Second wavenumber ``sqrt(k^2 - 4 mu)`` on the sheet with ``k' -> k`` as ``mu -> 0``.

    Off the real axis this is ``k sqrt(1 - 4mu/k^2)`` with the principal root,
    which gives ``k' = i sqrt(kappa^2 + 4mu)`` at ``k = i kappa``.  On the real
    segment ``0 < k < 2 sqrt(mu)`` the limit from the upper half plane is used,
    ``k' = +i sqrt(4mu - k^2)`` (the wave decaying to the right).
    """
    k = np.asarray(k, dtype=complex)
    out = k * np.sqrt(1.0 - 4.0 * mu / np.where(k == 0, 1.0, k) ** 2)
    on_axis = (np.abs(k.imag) == 0.0)
    kr = k.real
    below = on_axis & (kr ** 2 < 4.0 * mu)
    above = on_axis & ~below
    out = np.where(below, 1j * np.sqrt(np.maximum(4.0 * mu - kr ** 2, 0.0)), out)
    out = np.where(above, np.sign(kr) * np.sqrt(np.maximum(kr ** 2 - 4.0 * mu, 0.0)) + 0j, out)
    return out[()] if out.ndim == 0 else out


def gamma_ratio(num, den):
    """``prod Gamma(num) / prod Gamma(den)`` for complex scalars.

    Poles in the denominator give an exact zero; a pole in the numerator
    (with none in the denominator) gives complex infinity.
    """
    den_zero = sum(1 for z in den if rgamma(z) == 0)
    num_inf = sum(1 for z in num if rgamma(z) == 0)
    if num_inf > den_zero:
        return complex("inf")
    if den_zero > num_inf:
        return 0j
    if den_zero:
        # equal number of coincident poles: drop matching pole arguments pairwise
        num = [z for z in num if rgamma(z) != 0]
        den = [z for z in den if rgamma(z) != 0]
    s = sum(log_gamma(z) for z in num) - sum(log_gamma(z) for z in den)
    return cmath.exp(s)


def _as_k(k):
    k = np.asarray(k, dtype=complex)
    if np.any(k == 0):
        raise BranchError("k = 0 is the continuum threshold (Gamma(+-ik) poles)")
    return k


def _to_jet(x, order):
    if isinstance(x, Jet):
        return x, True
    return Jet.variable(np.asarray(x, dtype=float), order), False


class SolvablePotential:
    """Base class; subclasses fill in the family formulas.

    Parameters are passed as keywords, e.g. ``Soliton(h=2.5)``.  Pass
    ``validate=False`` to skip the family's parameter-range check (needed for
    shifted parameters in shape-invariance identities).
    """

    tag: ClassVar[str] = ""
    label: ClassVar[str] = ""
    group: ClassVar[Group] = Group.A
    param_names: ClassVar[Tuple[str, ...]] = ()
    shift: ClassVar[Dict[str, float]] = {}
    range_text: ClassVar[str] = ""
    half_line: ClassVar[bool] = False
    has_kprime: ClassVar[bool] = False

    def __init__(self, validate: bool = True, **params):
        missing = [p for p in self.param_names if p not in params]
        extra = [p for p in params if p not in self.param_names]
        if missing or extra:
            raise TypeError(
                f"{self.label} takes parameters {self.param_names}; "
                f"missing {missing}, unexpected {extra}"
            )
        self.params: Dict[str, float] = {k: float(params[k]) for k in self.param_names}
        if validate and not self._in_range(self.params):
            raise ParameterRangeError(self.label, self.range_text, self.params)

    # -- identity -------------------------------------------------------------
    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{type(self).__name__}({args})"

    def __eq__(self, other):
        return type(self) is type(other) and self.params == other.params

    def __hash__(self):
        return hash((type(self), tuple(self.params.items())))

    def __getattr__(self, name):
        params = self.__dict__.get("params")
        if params is not None and name in params:
            return params[name]
        raise AttributeError(name)

    def with_params(self, validate=True, **changes) -> "SolvablePotential":
        p = dict(self.params)
        p.update(changes)
        return type(self)(validate=validate, **p)

    def shifted(self, validate=False) -> "SolvablePotential":
        """The shape-invariance partner with parameters ``lambda + delta``."""
        p = {k: v + self.shift.get(k, 0.0) for k, v in self.params.items()}
        return type(self)(validate=validate, **p)

    # -- family data to be provided -------------------------------------------
    twists: ClassVar[Dict[str, str]] = {}

    def _in_range(self, p) -> bool:
        raise NotImplementedError

    def twist_params(self, name: str) -> Dict[str, float]:
        """Parameters after the discrete symmetry ``name`` (may be out of range)."""
        raise NotImplementedError

    def _energy(self, v, p) -> float:
        raise NotImplementedError

    def _exponents(self, v, p) -> Tuple[float, Optional[float]]:
        raise NotImplementedError

    def _log_prefactor(self, v, x: Jet, p) -> Jet:
        raise NotImplementedError

    def _polynomial(self, v, x: Jet, p) -> Jet:
        raise NotImplementedError

    def _constant(self, v, p, seed=False):
        return 1.0

    def _potential(self, x: Jet) -> Jet:
        raise NotImplementedError

    def nmax(self) -> Optional[int]:
        raise NotImplementedError

    def _amplitudes(self, k: complex) -> Tuple[Optional[complex], complex]:
        raise NotImplementedError

    # -- asymptotics of the potential ------------------------------------------
    def asymptote(self, side: str) -> float:
        """Limit of U at ``+inf`` (side ``"plus"``) or ``-inf``/``0`` (``"minus"``)."""
        if side == "plus" or (self.group is Group.A and not self.half_line):
            return 0.0
        return math.inf

    # -- public API -------------------------------------------------------------
    def check_domain(self, x0):
        if self.half_line and np.any(np.asarray(x0) <= 0):
            raise DomainError(f"{self.label} lives on x > 0; got x <= 0")

    def potential(self, x, order=0):
        """U(x).  Returns a Jet if ``x`` is a Jet, else a real array/scalar."""
        xj, was_jet = _to_jet(x, order)
        self.check_domain(xj.value)
        u = self._potential(xj)
        if np.iscomplexobj(u.c):
            u = Jet(u.c.real)
        if was_jet:
            return u
        return u.value[()] if np.ndim(u.value) == 0 else u.value

    def potential_value(self, x, order=None):
        """Jet form of :meth:`potential` (order defaults to the jet order setting)."""
        xj, _ = _to_jet(x, jets.default_order() if order is None else order)
        return self.potential(xj)

    def energy(self, n: int) -> float:
        return self._energy(n, self.params)

    def eigen_state(self, n: int) -> EigenState:
        nm = self.nmax()
        if n < 0 or (nm is not None and n > nm):
            raise IndexError(f"n={n} outside 0..{nm} for {self!r}")
        ab = self._alpha_beta(n, self.params)
        return EigenState(n=n, energy=self.energy(n), alpha=ab[0], beta=ab[1])

    def _alpha_beta(self, n, p):
        return (None, None)

    def levels(self, n_cut: int = 5):
        """Indices of the bound states (capped at ``n_cut`` for Coulomb)."""
        nm = self.nmax()
        if nm is None:
            nm = n_cut
        return list(range(nm + 1))

    def energies(self, n_cut: int = 5):
        return [self.energy(n) for n in self.levels(n_cut)]

    def form_parts(self, v, x, p=None, order=None, seed=False):
        """Eigenfunction form of degree ``v`` at parameters ``p``, split as
        ``(log_scale, jet)`` with ``f = exp(log_scale) * jet``.

        ``jet`` has O(1) magnitude for prefactor growth; ``log_scale`` is the
        real log of the prefactor at the expansion point.
        """
        p = self.params if p is None else p
        xj, _ = _to_jet(x, jets.default_order() if order is None else order)
        self.check_domain(xj.value)
        L = self._log_prefactor(v, xj, p)
        L0 = np.real(L.value).copy()
        shifted = L - L0
        body = jets.exp(shifted) * self._polynomial(v, xj, p) * self._constant(v, p, seed=seed)
        return L0, body

    def form_split(self, v, x, p=None, order=None, seed=False):
        """``(L, P)`` jets with form ``= exp(L) * P``: log-prefactor and polynomial part."""
        p = self.params if p is None else p
        xj, _ = _to_jet(x, jets.default_order() if order is None else order)
        self.check_domain(xj.value)
        L = self._log_prefactor(v, xj, p)
        P = self._polynomial(v, xj, p) * self._constant(v, p, seed=seed)
        if np.iscomplexobj(L.c):
            L = L.real
        return L, P

    def eigenfunction(self, n, x, order=None):
        """phi_n(x); a Jet if ``x`` is a Jet, otherwise values."""
        nm = self.nmax()
        if n < 0 or (nm is not None and n > nm):
            raise IndexError(f"n={n} outside 0..{nm} for {self!r}")
        was_jet = isinstance(x, Jet)
        ls, body = self.form_parts(n, x, order=0 if (not was_jet and order is None) else order)
        f = body * np.exp(ls)
        f = _assert_real(f)
        return f if was_jet else (f.value[()] if np.ndim(f.value) == 0 else f.value)

    def groundstate_exponents(self) -> Tuple[float, Optional[float]]:
        """``(W_+, W_-)``; ``W_-`` is None on the half line."""
        dp, dm = self._exponents(0, self.params)
        return -dp, (None if dm is None else -dm)

    def exponents(self, v, p=None):
        return self._exponents(v, self.params if p is None else p)

    def form_energy(self, v, p=None):
        return self._energy(v, self.params if p is None else p)

    # -- scattering ----------------------------------------------------------------
    def kprime(self, k):
        return None

    def original_amplitudes(self, k) -> OriginalAmplitudes:
        k = _as_k(k)
        ts = np.empty(k.shape, dtype=complex)
        rs = np.empty(k.shape, dtype=complex)
        flat_k = k.reshape(-1)
        for i, kk in enumerate(flat_k):
            t, r = self._amplitudes(complex(kk))
            ts.reshape(-1)[i] = np.nan if t is None else t
            rs.reshape(-1)[i] = r
        kp = self.kprime(k)
        if k.ndim == 0:
            ts, rs = ts[()], rs[()]
        t_out = None if self.group is not Group.A else ts
        return OriginalAmplitudes(t=t_out, r=rs, kprime=kp)

    def flux_coefficients(self, k):
        """(T, R) for real ``k > 0`` on the full line."""
        if self.group is not Group.A:
            raise ValueError("flux coefficients are defined for full-line (group A) families")
        k = np.asarray(k, dtype=float)
        amp = self.original_amplitudes(k)
        kp = amp.kprime if amp.kprime is not None else k
        kp = np.asarray(kp, dtype=complex)
        real_kp = np.abs(kp.imag) <= 1e-300
        T = np.where(real_kp, (kp.real / k) * np.abs(amp.t) ** 2, 0.0)
        R = np.abs(amp.r) ** 2
        if T.ndim == 0:
            return float(T), float(R)
        return T, R

    def pole_wavenumbers(self, n_cut: int = 5):
        """k = i sqrt(-E_n) for every bound state."""
        return [1j * math.sqrt(-e) for e in self.energies(n_cut)]

    def twisted_potential(self, name: str) -> "SolvablePotential":
        return type(self)(validate=False, **self.twist_params(name))


def _assert_real(f: Jet, rtol=1e-10) -> Jet:
    if not np.iscomplexobj(f.c):
        return f
    scale = np.max(np.abs(f.c), axis=0)
    bad = np.abs(f.c.imag) > rtol * np.maximum(scale, 1e-300)
    if np.any(bad):
        worst = float(np.max(np.abs(f.c.imag) / np.maximum(scale, 1e-300)))
        raise RealnessViolation(f"imaginary part {worst:.2e} of a real quantity")
    return Jet(f.c.real.copy())


def _sech2(x: Jet) -> Jet:
    return jets.exp(-2.0 * jets.logcosh(x))


def _csch2(x: Jet) -> Jet:
    return jets.exp(-2.0 * jets.logsinh(x))


# ---------------------------------------------------------------------------------
# Group A: full line
# ---------------------------------------------------------------------------------

class RosenMorse(SolvablePotential):
    tag = "rm"
    label = "Rosen-Morse"
    group = Group.A
    param_names = ("h", "mu")
    shift = {"h": -1.0, "mu": 0.0}
    range_text = "h(h-1) > mu > 0"
    has_kprime = True
    twists = {"h": "h -> -h-1"}

    def _in_range(self, p):
        return p["h"] * (p["h"] - 1) > p["mu"] > 0

    def twist_params(self, name):
        if name != "h":
            raise KeyError(name)
        return {"h": -self.h - 1.0, "mu": self.mu}

    def _ab(self, v, p):
        a = p["h"] - v
        return a + p["mu"] / a, a - p["mu"] / a

    def _alpha_beta(self, n, p):
        return self._ab(n, p)

    def _energy(self, v, p):
        return -self._ab(v, p)[1] ** 2

    def _exponents(self, v, p):
        al, be = self._ab(v, p)
        return -al, be

    def _log_prefactor(self, v, x, p):
        a = p["h"] - v
        return (-p["mu"] / a) * x - a * jets.logcosh(x)

    def _polynomial(self, v, x, p):
        al, be = self._ab(v, p)
        return jacobi_P(v, al, be, jets.tanh(x))

    def _potential(self, x):
        h, mu = self.h, self.mu
        return -h * (h + 1) * _sech2(x) + 2.0 * mu * (jets.tanh(x) + 1.0)

    def asymptote(self, side):
        return 4.0 * self.mu if side == "plus" else 0.0

    def nmax(self):
        return bracket_prime(self.h - math.sqrt(self.mu))

    def kprime(self, k):
        return kprime(k, self.mu)

    def _amplitudes(self, k):
        h = self.h
        kp = complex(kprime(k, self.mu))
        a1 = -h - 0.5j * k - 0.5j * kp
        a2 = 1 + h - 0.5j * k - 0.5j * kp
        t = gamma_ratio([a1, a2], [-1j * k, 1 - 1j * kp])
        r = gamma_ratio(
            [1j * k, a1, a2],
            [-1j * k, -h + 0.5j * k - 0.5j * kp, 1 + h + 0.5j * k - 0.5j * kp],
        )
        return t, r


class Soliton(SolvablePotential):
    tag = "soliton"
    label = "soliton"
    group = Group.A
    param_names = ("h",)
    shift = {"h": -1.0}
    range_text = "h > 1/2"
    twists = {"h": "h -> -h-1"}

    def _in_range(self, p):
        return p["h"] > 0.5

    def twist_params(self, name):
        if name != "h":
            raise KeyError(name)
        return {"h": -self.h - 1.0}

    def _energy(self, v, p):
        return -(p["h"] - v) ** 2

    def _exponents(self, v, p):
        a = p["h"] - v
        return -a, a

    def _log_prefactor(self, v, x, p):
        return -(p["h"] - v) * jets.logcosh(x)

    def _polynomial(self, v, x, p):
        a = p["h"] - v
        return jacobi_P(v, a, a, jets.tanh(x))

    def _potential(self, x):
        h = self.h
        return -h * (h + 1) * _sech2(x)

    def nmax(self):
        return bracket_prime(self.h)

    @property
    def near_reflectionless(self) -> bool:
        """True when h is within 1e-6 of an integer (r is then ~0)."""
        return abs(self.h - round(self.h)) < 1e-6

    def _amplitudes(self, k):
        h = self.h
        t = gamma_ratio([-h - 1j * k, 1 + h - 1j * k], [-1j * k, 1 - 1j * k])
        # 1/(Gamma(-h) Gamma(1+h)) = -sin(pi h)/pi keeps integer h finite (r = 0).
        r = gamma_ratio([1j * k, -h - 1j * k, 1 + h - 1j * k], [-1j * k]) * (
            -math.sin(math.pi * h) / math.pi
        )
        return t, r


class HyperbolicSymTop(SolvablePotential):
    tag = "hst"
    label = "hyperbolic symmetric top II"
    group = Group.A
    param_names = ("h", "mu")
    shift = {"h": -1.0, "mu": 0.0}
    range_text = "h > 0, mu > 0"
    twists = {"h": "h -> -h-1, mu -> -mu"}

    def _in_range(self, p):
        return p["h"] > 0 and p["mu"] > 0

    def twist_params(self, name):
        if name != "h":
            raise KeyError(name)
        return {"h": -self.h - 1.0, "mu": -self.mu}

    def _energy(self, v, p):
        return -(p["h"] - v) ** 2

    def _exponents(self, v, p):
        a = p["h"] - v
        return -a, a

    def _log_prefactor(self, v, x, p):
        return -p["mu"] * jets.gudermannian(x) - p["h"] * jets.logcosh(x)

    def _polynomial(self, v, x, p):
        al = -p["h"] - 0.5 - 1j * p["mu"]
        be = -p["h"] - 0.5 + 1j * p["mu"]
        return jacobi_P(v, al, be, 1j * jets.sinh(x))

    def _constant(self, v, p, seed=False):
        return (1j) ** (-v)

    def _potential(self, x):
        h, mu = self.h, self.mu
        sech2 = _sech2(x)
        return (-h * (h + 1) + mu * mu) * sech2 + mu * (2 * h + 1) * jets.tanh(x) * jets.exp(
            -jets.logcosh(x)
        )

    def nmax(self):
        return bracket_prime(self.h)

    def _amplitudes(self, k):
        h, mu = self.h, self.mu
        t = gamma_ratio(
            [-h - 1j * k, 1 + h - 1j * k, 0.5 + 1j * mu - 1j * k, 0.5 - 1j * mu - 1j * k],
            [-1j * k, 1 - 1j * k, 0.5 - 1j * k, 0.5 - 1j * k],
        )
        pk = math.pi * k
        bracket = (
            math.cos(math.pi * h) * math.sinh(math.pi * mu) / cmath.cosh(pk)
            + 1j * math.sin(math.pi * h) * math.cosh(math.pi * mu) / cmath.sinh(pk)
        )
        return t, t * bracket

    def quasinormal_modes(self, n_cut: int = 5):
        """Poles of t and r at ``k = +-mu - (n + 1/2) i``."""
        out = []
        for n in range(n_cut + 1):
            out.append(self.mu - (n + 0.5) * 1j)
            out.append(-self.mu - (n + 0.5) * 1j)
        return out


# ---------------------------------------------------------------------------------
# Group B: half line (Morse lives on the full line but only reflects)
# ---------------------------------------------------------------------------------

class Morse(SolvablePotential):
    tag = "morse"
    label = "Morse"
    group = Group.B
    param_names = ("h", "mu")
    shift = {"h": -1.0, "mu": 0.0}
    range_text = "h > 1/2, mu > 0"
    twists = {"h": "h -> -h-1, mu -> -mu"}

    def _in_range(self, p):
        return p["h"] > 0.5 and p["mu"] > 0

    def twist_params(self, name):
        if name != "h":
            raise KeyError(name)
        return {"h": -self.h - 1.0, "mu": -self.mu}

    def _energy(self, v, p):
        return -(p["h"] - v) ** 2

    def _exponents(self, v, p):
        return -(p["h"] - v), None

    def _log_prefactor(self, v, x, p):
        return -(p["h"] - v) * x - p["mu"] * jets.exp(-x)

    def _polynomial(self, v, x, p):
        return laguerre_L(v, 2 * (p["h"] - v), 2 * p["mu"] * jets.exp(-x))

    def _constant(self, v, p, seed=False):
        return 1.0 if seed else (2 * p["mu"]) ** (-v)

    def _potential(self, x):
        h, mu = self.h, self.mu
        e = jets.exp(-x)
        return mu * mu * e * e - mu * (2 * h + 1) * e

    def nmax(self):
        return bracket_prime(self.h)

    def _amplitudes(self, k):
        h, mu = self.h, self.mu
        r = gamma_ratio([2j * k, -h - 1j * k], [-2j * k, -h + 1j * k])
        return None, r * cmath.exp(-2j * k * math.log(2 * mu))


class Eckart(SolvablePotential):
    tag = "eckart"
    label = "Eckart"
    group = Group.B
    param_names = ("g", "mu")
    shift = {"g": 1.0, "mu": 0.0}
    range_text = "sqrt(mu) > g > 3/2"
    half_line = True
    has_kprime = True
    twists = {"g": "g -> 1-g"}

    def _in_range(self, p):
        return math.sqrt(p["mu"]) > p["g"] > 1.5 if p["mu"] > 0 else False

    def twist_params(self, name):
        if name != "g":
            raise KeyError(name)
        return {"g": 1.0 - self.g, "mu": self.mu}

    def _ab(self, v, p):
        b = p["g"] + v
        return -b + p["mu"] / b, -b - p["mu"] / b

    def _alpha_beta(self, n, p):
        return self._ab(n, p)

    def _energy(self, v, p):
        return -self._ab(v, p)[0] ** 2

    def _exponents(self, v, p):
        return -self._ab(v, p)[0], None

    def _log_prefactor(self, v, x, p):
        b = p["g"] + v
        return (-p["mu"] / b) * x + b * jets.logsinh(x)

    def _polynomial(self, v, x, p):
        al, be = self._ab(v, p)
        return jacobi_P(v, al, be, jets.coth(x))

    def _potential(self, x):
        g, mu = self.g, self.mu
        e = jets.exp(-2.0 * x)
        den = 1.0 - e
        den.c[0] = -np.expm1(-2.0 * x.value)
        coth_minus_one = 2.0 * e / den
        return g * (g - 1) * _csch2(x) - 2.0 * mu * coth_minus_one

    def nmax(self):
        return bracket_prime(math.sqrt(self.mu) - self.g)

    def kprime(self, k):
        return kprime(k, self.mu)

    def _amplitudes(self, k):
        g = self.g
        kp = complex(kprime(k, self.mu))
        r = gamma_ratio(
            [1j * k, g - 0.5j * k + 0.5j * kp, g - 0.5j * k - 0.5j * kp],
            [-1j * k, g + 0.5j * k + 0.5j * kp, g + 0.5j * k - 0.5j * kp],
        )
        return None, r


class HyperbolicPT(SolvablePotential):
    tag = "hpt"
    label = "hyperbolic Poschl-Teller"
    group = Group.B
    param_names = ("g", "h")
    shift = {"g": 1.0, "h": -1.0}
    range_text = "h > g > 1/2"
    half_line = True
    twists = {"h": "h -> -h-1", "g": "g -> 1-g", "gh": "g -> 1-g, h -> -h-1"}

    def _in_range(self, p):
        return p["h"] > p["g"] > 0.5

    def twist_params(self, name):
        g, h = self.g, self.h
        if name == "h":
            return {"g": g, "h": -h - 1.0}
        if name == "g":
            return {"g": 1.0 - g, "h": h}
        if name == "gh":
            return {"g": 1.0 - g, "h": -h - 1.0}
        raise KeyError(name)

    def _energy(self, v, p):
        return -(p["h"] - p["g"] - 2 * v) ** 2

    def _exponents(self, v, p):
        return p["g"] - p["h"] + 2 * v, None

    def _log_prefactor(self, v, x, p):
        return p["g"] * jets.logsinh(x) - p["h"] * jets.logcosh(x)

    def _polynomial(self, v, x, p):
        return jacobi_P(v, p["g"] - 0.5, -p["h"] - 0.5, jets.cosh(2.0 * x))

    def _potential(self, x):
        g, h = self.g, self.h
        return g * (g - 1) * _csch2(x) - h * (h + 1) * _sech2(x)

    def nmax(self):
        return bracket_prime(0.5 * (self.h - self.g))

    def _amplitudes(self, k):
        g, h = self.g, self.h
        r = gamma_ratio(
            [1j * k, 0.5 * (-h + g - 1j * k), 0.5 * (1 + h + g - 1j * k)],
            [-1j * k, 0.5 * (-h + g + 1j * k), 0.5 * (1 + h + g + 1j * k)],
        )
        return None, r * cmath.exp(-2j * k * math.log(2.0))


# ---------------------------------------------------------------------------------
# Group C: Coulomb plus centrifugal barrier
# ---------------------------------------------------------------------------------

class Coulomb(SolvablePotential):
    tag = "coulomb"
    label = "Coulomb"
    group = Group.C
    param_names = ("g",)
    shift = {"g": 1.0}
    range_text = "g > 3/2"
    half_line = True
    twists = {"g": "g -> 1-g"}

    def _in_range(self, p):
        return p["g"] > 1.5

    def twist_params(self, name):
        if name != "g":
            raise KeyError(name)
        return {"g": 1.0 - self.g}

    def _energy(self, v, p):
        return -1.0 / (p["g"] + v) ** 2

    def _exponents(self, v, p):
        return -1.0 / (p["g"] + v), None

    def power_correction(self, v, p=None):
        """Exponent of the extra power ``x^q`` in the large-x form of degree ``v``."""
        p = self.params if p is None else p
        return p["g"] + v

    def _log_prefactor(self, v, x, p):
        b = p["g"] + v
        return -x / b + p["g"] * jets.log(x)

    def _polynomial(self, v, x, p):
        b = p["g"] + v
        return laguerre_L(v, 2 * p["g"] - 1, (2.0 / b) * x)

    def _potential(self, x):
        g = self.g
        inv = 1.0 / x
        return g * (g - 1) * inv * inv - 2.0 * inv

    def nmax(self):
        return None

    def _amplitudes(self, k):
        g = self.g
        r = gamma_ratio([g - 1j / k], [g + 1j / k]) * cmath.exp(-1j * math.pi * g)
        return None, r


FAMILIES: Dict[str, type] = {
    cls.tag: cls
    for cls in (RosenMorse, Soliton, HyperbolicSymTop, Morse, Eckart, HyperbolicPT, Coulomb)
}

_ALIASES = {
    "rosenmorse": "rm",
    "rosen-morse": "rm",
    "hyperbolicsymtop": "hst",
    "hyperbolic-symmetric-top": "hst",
    "hyperbolicpt": "hpt",
    "hyperbolic-pt": "hpt",
}


def family_class(name: str) -> type:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    try:
        return FAMILIES[key]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


def make_potential(family: str, validate: bool = True, **params) -> SolvablePotential:
    """Construct a potential by family tag, e.g. ``make_potential("rm", h=3, mu=2)``."""
    return family_class(family)(validate=validate, **params)


def potential_value(spec: SolvablePotential, x: Jet) -> Jet:
    return spec.potential(x)


def original_amplitudes(spec: SolvablePotential, k) -> OriginalAmplitudes:
    return spec.original_amplitudes(k)


def flux_coefficients(spec: SolvablePotential, k):
    return spec.flux_coefficients(k)


def groundstate_exponents(spec: SolvablePotential):
    return spec.groundstate_exponents()


def potential_symmetry_residual(spec: SolvablePotential, x, twist: str) -> float:
    """max |U(x; twisted) - U(x)| over the points ``x``."""
    tw = spec.twisted_potential(twist)
    return float(np.max(np.abs(tw.potential(x) - spec.potential(x))))

