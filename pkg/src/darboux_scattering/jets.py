"""Truncated Taylor series ("jets") with numpy batch dimensions.

A :class:`Jet` of order ``n`` stores the Taylor coefficients
``c[k] = f^(k)(x0) / k!`` for ``k = 0..n`` along axis 0; any trailing axes
are batch axes (typically a grid of expansion points), so one Jet carries the
local expansion of a function at every grid point at once.  Arithmetic is
exact truncated power-series arithmetic, i.e. it obeys the Leibniz rule.
"""

from __future__ import annotations

import math
import os

import numpy as np

DEFAULT_ORDER = 3


def default_order() -> int:
    """Jet order used when callers do not ask for one.

    ``SCATTER_JET_ORDER`` in the environment overrides the built-in 3.
    """
    raw = os.environ.get("SCATTER_JET_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    order = int(raw)
    if order < 0:
        raise ValueError("SCATTER_JET_ORDER must be >= 0")
    return order


# -- raw coefficient-array kernels (axis 0 = order) --------------------------

def _mul(a, b):
    n = min(a.shape[0], b.shape[0])
    shape = np.broadcast_shapes(a.shape[1:], b.shape[1:])
    out = np.zeros((n,) + shape, dtype=np.result_type(a, b))
    for k in range(n):
        acc = a[0] * b[k]
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j]
        out[k] = acc
    return out


def _div(a, b):
    n = min(a.shape[0], b.shape[0])
    shape = np.broadcast_shapes(a.shape[1:], b.shape[1:])
    out = np.zeros((n,) + shape, dtype=np.result_type(a, b, float))
    b0 = b[0]
    for k in range(n):
        acc = a[k]
        for j in range(1, k + 1):
            acc = acc - b[j] * out[k - j]
        out[k] = acc / b0
    return out


def _exp(a):
    out = np.zeros_like(a, dtype=np.result_type(a, float))
    out[0] = np.exp(a[0])
    for k in range(1, a.shape[0]):
        acc = 0.0
        for j in range(1, k + 1):
            acc = acc + j * a[j] * out[k - j]
        out[k] = acc / k
    return out


def _log(a, value=None):
    out = np.zeros_like(a, dtype=np.result_type(a, float))
    out[0] = np.log(a[0]) if value is None else value
    for k in range(1, a.shape[0]):
        acc = a[k]
        for j in range(1, k):
            acc = acc - j * out[j] * a[k - j] / k
        out[k] = acc / a[0]
    return out


def _pow(a, alpha):
    out = np.zeros_like(a, dtype=np.result_type(a, float, alpha))
    out[0] = a[0] ** alpha
    for k in range(1, a.shape[0]):
        acc = 0.0
        for j in range(1, k + 1):
            acc = acc + ((alpha + 1) * j - k) * a[j] * out[k - j]
        out[k] = acc / (k * a[0])
    return out


def _sinhcosh(a):
    s = np.zeros_like(a, dtype=np.result_type(a, float))
    c = np.zeros_like(s)
    s[0] = np.sinh(a[0])
    c[0] = np.cosh(a[0])
    for k in range(1, a.shape[0]):
        acc_s = 0.0
        acc_c = 0.0
        for j in range(1, k + 1):
            acc_s = acc_s + j * a[j] * c[k - j]
            acc_c = acc_c + j * a[j] * s[k - j]
        s[k] = acc_s / k
        c[k] = acc_c / k
    return s, c


def _sincos(a):
    s = np.zeros_like(a, dtype=np.result_type(a, float))
    c = np.zeros_like(s)
    s[0] = np.sin(a[0])
    c[0] = np.cos(a[0])
    for k in range(1, a.shape[0]):
        acc_s = 0.0
        acc_c = 0.0
        for j in range(1, k + 1):
            acc_s = acc_s + j * a[j] * c[k - j]
            acc_c = acc_c - j * a[j] * s[k - j]
        s[k] = acc_s / k
        c[k] = acc_c / k
    return s, c


def _derivative(a, times=1):
    n = a.shape[0]
    if times >= n:
        raise ValueError(f"cannot differentiate an order-{n - 1} jet {times} times")
    k = np.arange(n - times)
    # (k+times)!/k!
    fac = np.ones(n - times)
    for t in range(1, times + 1):
        fac = fac * (k + t)
    fac = fac.reshape((-1,) + (1,) * (a.ndim - 1))
    return a[times:] * fac


def _integrate(a, value):
    n = a.shape[0]
    out = np.zeros((n + 1,) + a.shape[1:], dtype=np.result_type(a, value, float))
    out[0] = value
    k = np.arange(1, n + 1).reshape((-1,) + (1,) * (a.ndim - 1))
    out[1:] = a / k
    return out


def _pad(c, batch_ndim):
    """Insert unit batch axes so ``c`` broadcasts against ``batch_ndim`` batch dims."""
    extra = batch_ndim - (c.ndim - 1)
    if extra <= 0:
        return c
    return c.reshape((c.shape[0],) + (1,) * extra + c.shape[1:])


class Jet:
    """Truncated Taylor expansion ``sum_k c[k] t^k`` about a point (or grid)."""

    __slots__ = ("c",)
    __array_ufunc__ = None

    def __init__(self, coeffs):
        c = np.asarray(coeffs)
        if c.ndim == 0:
            raise ValueError("a Jet needs at least one coefficient")
        if not np.iscomplexobj(c):
            c = c.astype(float)
        self.c = c

    # -- constructors -------------------------------------------------------
    @classmethod
    def variable(cls, x0, order=None):
        """The identity function expanded about ``x0`` (scalar or array)."""
        order = default_order() if order is None else order
        x0 = np.asarray(x0, dtype=float)
        c = np.zeros((order + 1,) + x0.shape)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, order, shape=()):
        value = np.asarray(value)
        shape = np.broadcast_shapes(shape, value.shape)
        dtype = np.result_type(value, float)
        c = np.zeros((order + 1,) + shape, dtype=dtype)
        c[0] = value
        return cls(c)

    @classmethod
    def from_derivatives(cls, derivs):
        """Build from ``[f, f', f'', ...]`` (the inverse of :meth:`derivatives`)."""
        d = np.asarray(derivs)
        fact = np.array([math.factorial(k) for k in range(d.shape[0])], dtype=float)
        return cls(d / fact.reshape((-1,) + (1,) * (d.ndim - 1)))

    # -- views ----------------------------------------------------------------
    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def shape(self):
        return self.c.shape[1:]

    @property
    def value(self):
        return self.c[0]

    def derivatives(self):
        """``[f, f', ..., f^(order)]`` stacked along axis 0."""
        fact = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.c * fact.reshape((-1,) + (1,) * (self.c.ndim - 1))

    def derivative(self, times=1) -> "Jet":
        """Jet of ``f^(times)``; the order drops by ``times``."""
        if times == 0:
            return self
        return Jet(_derivative(self.c, times))

    def integrate(self, value) -> "Jet":
        """Antiderivative with the given value at the expansion point."""
        return Jet(_integrate(self.c, value))

    def truncate(self, order) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.c[: order + 1])

    @property
    def real(self) -> "Jet":
        return Jet(self.c.real.copy())

    @property
    def imag(self) -> "Jet":
        return Jet(self.c.imag.copy())

    def conj(self) -> "Jet":
        return Jet(np.conj(self.c))

    def __getitem__(self, idx) -> "Jet":
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Jet(self.c[(slice(None),) + idx])

    def __len__(self):
        return self.c.shape[0]

    def __repr__(self):
        return f"Jet(order={self.order}, shape={self.shape}, c0={self.c[0]!r})"

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Jet):
            return other.c
        other = np.asarray(other)
        c = np.zeros((self.c.shape[0],) + other.shape, dtype=np.result_type(other, float))
        c[0] = other
        return c

    @staticmethod
    def _match(a, b):
        n = min(a.shape[0], b.shape[0])
        return _pad(a[:n], b.ndim - 1), _pad(b[:n], a.ndim - 1)

    def __add__(self, other):
        a, b = self._match(self.c, self._coerce(other))
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._match(self.c, self._coerce(other))
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = self._match(self.c, self._coerce(other))
        return Jet(b - a)

    def __neg__(self):
        return Jet(-self.c)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(_mul(*self._match(self.c, other.c)))
        other = np.asarray(other)
        return Jet(_pad(self.c, other.ndim) * other[None, ...])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            if np.any(other.c[0] == 0):
                raise ZeroDivisionError("jet division by a jet with zero value")
            return Jet(_div(*self._match(self.c, other.c)))
        other = np.asarray(other)
        if np.any(other == 0):
            raise ZeroDivisionError("jet division by zero")
        return Jet(_pad(self.c, other.ndim) / other[None, ...])

    def __rtruediv__(self, other):
        if np.any(self.c[0] == 0):
            raise ZeroDivisionError("jet division by a jet with zero value")
        return Jet(_div(*self._match(self._coerce(other), self.c)))

    def __pow__(self, alpha):
        if isinstance(alpha, (int, np.integer)) and alpha >= 0:
            out = Jet.constant(1.0, self.order, self.shape)
            base = self
            e = int(alpha)
            while e:
                if e & 1:
                    out = out * base
                e >>= 1
                if e:
                    base = base * base
            return out
        return Jet(_pow(self.c, alpha))


# -- elementary functions ------------------------------------------------------

def exp(a: Jet) -> Jet:
    return Jet(_exp(a.c))


def log(a: Jet, value=None) -> Jet:
    """Natural log; ``value`` overrides the 0th coefficient (for stability)."""
    return Jet(_log(a.c, value))


def sqrt(a: Jet) -> Jet:
    return Jet(_pow(a.c, 0.5))


def sinh(a: Jet) -> Jet:
    return Jet(_sinhcosh(a.c)[0])


def cosh(a: Jet) -> Jet:
    return Jet(_sinhcosh(a.c)[1])


def sin(a: Jet) -> Jet:
    return Jet(_sincos(a.c)[0])


def cos(a: Jet) -> Jet:
    return Jet(_sincos(a.c)[1])


def _sign(x0):
    s = np.sign(np.real(x0))
    return np.where(s == 0, 1.0, s)


def tanh(a: Jet) -> Jet:
    s = _sign(a.value)
    e = exp(-2.0 * s * a)
    return s * (1.0 - e) / (1.0 + e)


def logcosh(a: Jet) -> Jet:
    """``log cosh a`` without overflow for large ``|a|``."""
    s = _sign(a.value)
    sa = s * a
    e = exp(-2.0 * sa)
    return sa + log(1.0 + e, np.log1p(e.value)) - math.log(2.0)


def logsinh(a: Jet) -> Jet:
    """``log sinh a`` for ``a > 0``, accurate for both tiny and large ``a``."""
    if np.any(np.real(a.value) <= 0):
        raise ValueError("logsinh needs a positive argument")
    e = exp(-2.0 * a)
    one_minus = 1.0 - e
    one_minus.c[0] = -np.expm1(-2.0 * a.value)
    return a + log(one_minus) - math.log(2.0)


def coth(a: Jet) -> Jet:
    s = _sign(a.value)
    e = exp(-2.0 * s * a)
    den = 1.0 - e
    den.c[0] = -np.expm1(-2.0 * s * a.value)
    return s * (1.0 + e) / den


def arctan(a: Jet) -> Jet:
    if a.order == 0:
        return Jet(np.arctan(a.c))
    d = a.derivative() / (1.0 + a.truncate(a.order - 1) ** 2)
    return d.integrate(np.arctan(a.value))


def gudermannian(a: Jet) -> Jet:
    """``arctan(sinh a)`` evaluated as ``2 arctan(tanh(a/2))``."""
    return 2.0 * arctan(tanh(0.5 * a))
