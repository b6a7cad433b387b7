"""Independent numerical checks: Numerov scattering and shooting for bound states.

Nothing here uses the closed-form amplitudes or spectra.  The potential is
only sampled as a function of ``x``; the asymptotic wavenumbers come from its
limits.  Energies are measured with ``U(-inf) = 0`` (full line) or
``U(+inf) = 0`` (half line and Morse), matching ``E = k^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .darboux import Scenario, deformed_potential
from .exceptions import NonFlatAsymptote, NotApplicable, StiffRegion
from .potentials import Group, SolvablePotential

DEFAULT_STEP = 1e-3
RADII = (12.0, 16.0, 20.0, 25.0, 30.0, 40.0)
FLAT_TOL = 1e-9
PROJECT_GAP = 0.25
HALF_LINE_X0 = 1e-4
BARRIER_HEIGHT = 400.0
MESH_CHUNK = 100
STIFF_LIMIT = 0.5  # h^2 |U - E| / 12 beyond which Numerov loses stability


@dataclass(frozen=True)
class OracleProblem:
    """A sampled potential plus what the integrator needs about its ends.

    ``left`` is ``"flat"`` (full line, plane waves on both sides), ``"origin"``
    (half line, regular power-law start near ``x = 0``) or ``"barrier"``
    (full line with an exponential wall on the left).
    """

    U: Callable[[np.ndarray], np.ndarray]
    group: Group
    left: str
    u_minus: float
    u_plus: float
    label: str = ""
    long_range: bool = False

    def flat_radius(self, side: str, tol: float = FLAT_TOL) -> float:
        target = self.u_plus if side == "plus" else self.u_minus
        sgn = 1.0 if side == "plus" else -1.0
        for r in RADII:
            probe = sgn * np.array([r, r + PROJECT_GAP])
            if np.max(np.abs(self.U(probe) - target)) < tol:
                return r
        raise NonFlatAsymptote(
            f"{self.label}: |U - U_asym| >= {tol:g} out to x = {sgn * RADII[-1]:g}"
        )


def _sampler(obj) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(obj, Scenario):
        if obj.M == 0:
            return lambda x: np.asarray(obj.spec.potential(np.asarray(x, float)), float)
        return lambda x: np.real(deformed_potential(obj, np.asarray(x, float), check=False))
    return lambda x: np.asarray(obj.potential(np.asarray(x, float)), float)


def oracle_problem(obj: Union[SolvablePotential, Scenario]) -> OracleProblem:
    """Build the integration problem for a base potential or a deformed scenario.

    Deformations leave the asymptotic values unchanged, so those come from the
    base family.
    """
    spec = obj.spec if isinstance(obj, Scenario) else obj
    label = repr(obj)
    if spec.half_line:
        left = "origin"
    elif spec.group is Group.A:
        left = "flat"
    else:
        left = "barrier"
    um = spec.asymptote("minus")
    return OracleProblem(
        U=_sampler(obj),
        group=spec.group,
        left=left,
        u_minus=um if math.isfinite(um) else math.inf,
        u_plus=spec.asymptote("plus"),
        label=label,
        long_range=spec.group is Group.C,
    )


# -- Numerov core ------------------------------------------------------------------

def _march(U: Callable, x_first: float, h: float, n: int, E, y0, y1, keep: int):
    """Advance ``n`` Numerov steps from values at ``x_first`` and ``x_first + h``.

    ``E`` broadcasts against the columns of ``y0``.  Returns the last ``keep``
    rows (oldest first) and the final abscissa.  Uses the summed form
    ``z = (1 - w/12) y``, ``z[n+1] - 2 z[n] + z[n-1] = w[n] y[n]`` with the first
    difference carried separately, which keeps roundoff growth linear.
    Columns are rescaled on the fly; per-column ratios are unaffected.
    """
    xs = x_first + h * np.arange(n + 2)
    w = (h * h) * (U(xs)[:, None] - np.asarray(E)[None, ...])
    if np.max(np.abs(w)) / 12.0 > STIFF_LIMIT:
        i = int(np.argmax(np.max(np.abs(w), axis=1)))
        raise StiffRegion(f"step {abs(h):g} too coarse near x = {xs[i]:.4g}")
    a = 1.0 - w / 12.0
    cplx = np.iscomplexobj(y0) or np.iscomplexobj(y1) or np.iscomplexobj(E)
    dt = complex if cplx else float
    y_prev = np.array(y0, dtype=dt) * np.ones(w.shape[1:])
    y_cur = np.array(y1, dtype=dt) * np.ones(w.shape[1:])
    z = a[1] * y_cur
    d = z - a[0] * y_prev
    buf = [y_prev, y_cur]
    for j in range(1, n + 1):
        d = d + w[j] * y_cur
        z = z + d
        y_cur = z / a[j + 1]
        big = np.abs(y_cur) > 1e150
        if np.any(big):
            s = np.where(big, 1e-150, 1.0)
            y_cur, z, d = y_cur * s, z * s, d * s
            buf = [r * s for r in buf]
        buf.append(y_cur)
        if len(buf) > keep:
            del buf[0]
    return np.array(buf), xs[-1]


def _run_plan(U, E, x_start: float, y0, y1, plan: Sequence[Tuple[float, float]], keep: int):
    """Chain segments ``(step, x_stop)``; each step is an integer multiple (<= 10) of the previous one."""
    h0 = plan[0][0]
    rows = np.array([y0, y1])
    x_cur = x_start + h0
    h_prev = h0
    for h, x_stop in plan:
        ratio = int(round(h / h_prev))
        if ratio < 1 or ratio > 10 or abs(ratio * h_prev - h) > 1e-9 * abs(h):
            raise ValueError("segment steps must grow by an integer factor of at most 10")
        if rows.shape[0] < ratio + 1:
            raise ValueError("not enough history to widen the step")
        y_a = rows[-1 - ratio]
        y_b = rows[-1]
        n = int(round((x_stop - x_cur) / h))
        if n < 1:
            continue
        rows, x_cur = _march(U, x_cur - h, h, n, E, y_a, y_b, max(keep, 11))
        h_prev = h
    return rows, x_cur, h_prev


def _origin_start(U, x0: float) -> Tuple[float, float]:
    """Frobenius data ``(p, a1)`` of the regular solution ``x^p (1 + a1 x)``.

    ``x^2 U = c + q x + O(x^2)`` is fitted on a few points just above ``x0``,
    where the sampled potential is still accurate; ``p(p-1) = c``, ``a1 = q/(2p)``.
    """
    xs = x0 * np.array([10.0, 20.0, 30.0])
    f = U(xs) * xs ** 2
    s2, q, c = np.polyfit(xs, f, 2)
    if c < -0.25:
        raise NotApplicable("attractive 1/x^2 core below -1/4 has no regular solution")
    p = 0.5 + math.sqrt(0.25 + c)
    return p, q / (2.0 * p)


def _origin_plan(h: float, x_end: float):
    plan = [(1e-6, 1e-3), (1e-5, 1e-2), (1e-4, 1e-1)]
    if h < 1e-4:
        plan = [(s, x) for s, x in plan if s <= h] or [(h, 1e-1)]
    step = 1e-4
    while step * 10 <= h + 1e-15:
        step *= 10
        plan.append((step, 1.0 if step < h else x_end))
    if plan[-1][0] != h:
        plan.append((h, x_end))
    plan[-1] = (plan[-1][0], x_end)
    return plan


def _barrier_start(prob: OracleProblem, E_max: float) -> float:
    """Leftmost point where ``U - E`` reaches the barrier height."""
    x = -1.0
    while float(prob.U(np.array([x]))[0]) - E_max < BARRIER_HEIGHT:
        x -= 0.25
        if x < -60:
            raise StiffRegion(f"{prob.label}: no confining wall found on the left")
    return x


def _left_solution(prob: OracleProblem, E, h: float, x_end: float, keep: int, x_begin: float):
    """Regular solution from the left boundary marched to ``x_end``."""
    E = np.asarray(E)
    if prob.left == "origin":
        x0 = HALF_LINE_X0
        p, a1 = _origin_start(prob.U, x0)
        plan = _origin_plan(h, x_end)
        s0 = plan[0][0]
        ones = np.ones(E.shape)
        x1 = x0 + s0
        y0 = x0 ** p * (1.0 + a1 * x0) * ones
        y1 = x1 ** p * (1.0 + a1 * x1) * ones
        return _run_plan(prob.U, E, x0, y0, y1, plan, keep)
    if prob.left == "barrier":
        # WKB: growing to the right means decaying into the wall
        xs = x_begin
        qa = np.sqrt(prob.U(np.array([xs]))[0] - E + 0j)
        qb = np.sqrt(prob.U(np.array([xs + h]))[0] - E + 0j)
        y0 = np.ones(E.shape) / np.sqrt(qa)
        y1 = np.exp(0.5 * h * (qa + qb)) / np.sqrt(qb)
        if not np.iscomplexobj(E):
            y0, y1 = y0.real, y1.real
        return _run_plan(prob.U, E, xs, y0, y1, [(h, x_end)], keep)
    # flat left side: decaying exponential e^{kappa x} (bound states only)
    kap = np.sqrt(prob.u_minus - E)
    return _run_plan(prob.U, E, x_begin, np.exp(kap * 0.0), np.exp(kap * h), [(h, x_end)], keep)


# -- scattering ----------------------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    k: float
    r_num: complex
    t_num: Optional[complex]
    x_left: float
    x_right: float
    residuals: Dict[str, float] = field(default_factory=dict)


def _project(rows, x_end: float, h: float, k, gap_steps: int):
    """Coefficients ``(c_plus, c_minus)`` of ``e^{+ikx}``, ``e^{-ikx}`` from two rows."""
    xa, xb = x_end - gap_steps * h, x_end
    ya, yb = rows[-1 - gap_steps], rows[-1]
    ea, eb = np.exp(1j * k * xa), np.exp(1j * k * xb)
    det = ea / eb - eb / ea
    c_plus = (ya / eb - yb / ea) / det
    c_minus = (yb * ea - ya * eb) / det
    return c_plus, c_minus


def _scatter_once(prob: OracleProblem, k: np.ndarray, h: float, xl: float, xr: float):
    gap = int(round(PROJECT_GAP / abs(h)))
    if prob.group is Group.A:
        # transmitted wave e^{ik'x} on the right, marched leftward
        kp = np.sqrt(k.astype(complex) ** 2 - (prob.u_plus - prob.u_minus))
        kp = np.where(kp.imag < 0, -kp, kp)
        y0 = np.exp(1j * kp * xr)
        y1 = np.exp(1j * kp * (xr - h))
        rows, x_end, hh = _run_plan(prob.U, k ** 2 + prob.u_minus, xr, y0, y1, [(-h, xl)], gap + 1)
        # leftward rows: the last row sits at x_end, the one 'gap' back at x_end + gap*h
        a_plus, b_minus = _project(rows, x_end, hh, k, gap)
        t = 1.0 / a_plus
        r = b_minus / a_plus
        flux = np.where(kp.imag == 0, (kp.real / k) * np.abs(t) ** 2, 0.0) + np.abs(r) ** 2 - 1.0
        return r, t, flux
    E = k.astype(complex) ** 2 + prob.u_plus
    x_begin = _barrier_start(prob, float(np.max(E.real))) if prob.left == "barrier" else 0.0
    rows, x_end, hh = _left_solution(prob, E, h, xr, gap + 1, x_begin)
    c_out, c_in = _project(rows, x_end, hh, k, gap)
    r = c_out / c_in
    return r, None, np.abs(r) ** 2 - 1.0


def numerov_scatter(prob: Union[OracleProblem, SolvablePotential, Scenario], k,
                    h: float = DEFAULT_STEP, richardson: bool = False,
                    x_left: Optional[float] = None, x_right: Optional[float] = None):
    """Reflection (and transmission) amplitudes by direct integration.

    ``k`` may be a scalar or an array; a list of :class:`OracleResult` is
    returned for arrays.  ``richardson=True`` repeats the run at ``h/2`` and
    reports the change in ``r`` and ``t`` as ``residuals["step"]``.
    """
    if not isinstance(prob, OracleProblem):
        prob = oracle_problem(prob)
    if prob.long_range:
        raise NotApplicable("long-range 1/x tail: plane-wave matching does not apply")
    scalar = np.ndim(k) == 0
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if np.any(k <= 0):
        raise ValueError("oracle scattering needs k > 0")
    xr = x_right if x_right is not None else prob.flat_radius("plus")
    if prob.left == "flat":
        xl = x_left if x_left is not None else -prob.flat_radius("minus")
    else:
        xl = 0.0
    r, t, flux = _scatter_once(prob, k, h, xl, xr)
    step = None
    if richardson:
        r2, t2, _ = _scatter_once(prob, k, h / 2, xl, xr)
        step = np.abs(r2 - r)
        if t is not None:
            step = np.maximum(step, np.abs(t2 - t))
    out = []
    for i, kk in enumerate(k):
        res = {"flux": float(abs(flux[i]))}
        if step is not None:
            res["step"] = float(step[i])
        out.append(OracleResult(float(kk), complex(r[i]), None if t is None else complex(t[i]),
                                float(xl), float(xr), res))
    return out[0] if scalar else out


# -- bound states ------------------------------------------------------------------

def _right_decaying(prob: OracleProblem, E: np.ndarray, h: float, x_far: float, x_m: float, keep: int):
    kap = np.sqrt(prob.u_plus - E)
    y0 = np.ones_like(E)
    y1 = np.exp(kap * h)
    return _run_plan(prob.U, E, x_far, y0, y1, [(-h, x_m)], keep)


def _mismatch(prob: OracleProblem, E: np.ndarray, h: float, x_m: float,
              x_far: float, h_right: float, x_begin: float) -> np.ndarray:
    """Discrete Casoratian of the left-regular and right-decaying solutions.

    Both are sampled at ``x_m`` and ``x_m + h_right``; it vanishes exactly when
    the two Numerov solutions are proportional.
    """
    lrows, _, _ = _left_solution(prob, E, h, x_m + h_right, 2, x_begin)
    rrows, _, _ = _right_decaying(prob, E, h_right, x_far, x_m, 2)
    la, lb = lrows[-2], lrows[-1]  # x_m, x_m + h_right
    rb, ra = rrows[-2], rrows[-1]  # x_m + h_right, x_m
    w = la * rb - lb * ra
    return w / ((np.abs(la) + np.abs(lb)) * (np.abs(ra) + np.abs(rb)))


def _illinois(f, a: np.ndarray, b: np.ndarray, fa: np.ndarray, fb: np.ndarray,
              tol: float, max_iter: int = 100) -> np.ndarray:
    """Vectorized regula falsi (Illinois variant) on bracketing intervals."""
    side = np.zeros(a.shape, dtype=int)
    for _ in range(max_iter):
        c = b - fb * (b - a) / (fb - fa)
        c = np.where(np.isfinite(c), c, 0.5 * (a + b))
        if np.all(np.abs(b - a) < tol):
            break
        fc = f(c)
        left = np.sign(fc) == np.sign(fa)
        # replace a where f(c) has a's sign, else b
        a_new = np.where(left, c, a)
        fa_new = np.where(left, fc, np.where(side == -1, fa / 2, fa))
        b_new = np.where(left, b, c)
        fb_new = np.where(left, np.where(side == 1, fb / 2, fb), fc)
        side = np.where(left, 1, -1)
        a, b, fa, fb = a_new, b_new, fa_new, fb_new
        done = fc == 0
        if np.any(done):
            a = np.where(done, c, a)
            b = np.where(done, c, b)
    return 0.5 * (a + b)


def _edge(prob: OracleProblem) -> float:
    return prob.u_plus if prob.left != "flat" else min(prob.u_minus, prob.u_plus)


def _well(prob: OracleProblem) -> Tuple[float, float]:
    """Location and depth of the potential minimum."""
    if prob.left == "flat":
        xs = np.linspace(-12, 12, 2401)
    elif prob.left == "origin":
        xs = np.linspace(0.05, 12, 2401)
    else:
        xs = np.linspace(-4, 12, 1601)
    uu = prob.U(xs)
    i = int(np.argmin(uu))
    return float(xs[i]), float(uu[i])


def default_window(prob: Union[OracleProblem, SolvablePotential, Scenario]) -> Tuple[float, float]:
    """From the potential minimum to just below the continuum edge.

    The long-range case stops at ``edge - 0.02``, since levels accumulate there.
    """
    if not isinstance(prob, OracleProblem):
        prob = oracle_problem(prob)
    _, umin = _well(prob)
    return umin + 1e-9, _edge(prob) - (0.02 if prob.long_range else 1e-4)


def shoot_bound_states(prob: Union[OracleProblem, SolvablePotential, Scenario],
                       window: Optional[Tuple[float, float]] = None, mesh: int = 400,
                       h: float = DEFAULT_STEP, tol: float = 1e-8) -> List[float]:
    """All eigenvalues in ``window`` from sign changes of the matching Casoratian.

    The default window runs from the potential minimum to just below the
    continuum edge.  The mesh is refined by regula falsi to ``tol``.
    """
    if not isinstance(prob, OracleProblem):
        prob = oracle_problem(prob)
    edge = _edge(prob)
    x_m, _ = _well(prob)
    lo, hi = default_window(prob) if window is None else window
    if hi >= edge:
        raise ValueError(f"window must lie below the continuum edge {edge:g}")
    x_m = round(x_m / h) * h if prob.left != "origin" else max(round(x_m), 1.0)
    kap_min = math.sqrt(edge - hi)
    if prob.long_range:
        h_right = 1e-2
        x_far = x_m + 40.0 / kap_min
    else:
        h_right = h
        x_far = max(prob.flat_radius("plus"), x_m + 1.0)
    x_far = x_m + round((x_far - x_m) / h_right) * h_right
    x_begin = 0.0
    if prob.left == "flat":
        x_begin = min(-prob.flat_radius("minus"), x_m - 1.0)
        x_begin = x_m - round((x_m - x_begin) / h) * h
    elif prob.left == "barrier":
        x_begin = _barrier_start(prob, hi)
        x_begin = x_m - round((x_m - x_begin) / h) * h

    def f(E):
        E = np.asarray(E, float)
        parts = [
            _mismatch(prob, E[i:i + MESH_CHUNK], h_right, x_m, x_far, h_right, x_begin)
            for i in range(0, E.size, MESH_CHUNK)
        ]
        return np.concatenate(parts)

    grid = np.linspace(lo, hi, mesh)
    fg = f(grid)
    idx = np.flatnonzero(np.sign(fg[:-1]) * np.sign(fg[1:]) < 0)
    exact = grid[fg == 0]
    if idx.size == 0:
        return sorted(float(e) for e in exact)
    roots = _illinois(f, grid[idx], grid[idx + 1], fg[idx], fg[idx + 1], tol)
    return sorted([float(e) for e in roots] + [float(e) for e in exact])
