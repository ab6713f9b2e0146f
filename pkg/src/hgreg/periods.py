"""Period integrals of the hypergeometric scheme by contour and torus quadrature.

The scheme is ``(1 - x_0^n_0) ... (1 - x_d^n_d) = t``.  The vanishing cycle is
the torus ``|x_k - 1| = rho`` (k >= 1) with ``x_0`` on the branch near 1; each
circle is traversed clockwise, which makes the period of ``omega_i`` equal to
``(2 pi i)^d / (n_0 ... n_d) * (d+1)F(d)(a; 1, ..., 1; t)`` with ``a_k = 1 - i_k/n_k``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp

from .errors import ConvergenceError, DomainError
from .hypergeom.series import pfq_series
from .numerics import GUARD, pochhammer, to_mp


@dataclass(frozen=True)
class SchemeDescriptor:
    n: tuple
    t: object

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        object.__setattr__(self, "n", n)
        if len(n) < 2 or any(v < 1 for v in n):
            raise DomainError("need d >= 1 and every n_k >= 1")
        t = to_mp(self.t)
        if t == 0 or t == 1:
            raise DomainError("fibre parameter must avoid 0 and 1")

    @property
    def d(self):
        return len(self.n) - 1


@dataclass(frozen=True)
class PeriodForm:
    i: tuple
    r: int = 0

    def check(self, scheme):
        if len(self.i) != len(scheme.n):
            raise DomainError("index length mismatch")
        for nk, ik in zip(scheme.n, self.i):
            if not 0 < ik < nk:
                raise DomainError(f"index {ik} outside (0, {nk})")
        if self.r < 0:
            raise DomainError("twist order must be >= 0")

    def params(self, scheme):
        return [1 - Fraction(ik, nk) for nk, ik in zip(scheme.n, self.i)]


@dataclass(frozen=True)
class TorusCycle:
    rho: object
    orientation: int = -1
    grid: int = 64

    def __post_init__(self):
        if self.grid & (self.grid - 1):
            raise DomainError("grid size must be a power of two")
        if not 0 < to_mp(self.rho) < 1:
            raise DomainError("torus radius must lie in (0, 1)")

    @classmethod
    def default(cls, scheme, grid=64):
        return cls(abs(to_mp(scheme.t)) ** (mpmath.mpf(1) / (scheme.d + 1)), -1, grid)


# --- contour lemma -----------------------------------------------------------------

def contour_radius(c2):
    """A third of the distance from 1 to the nearest other zero of 1 - x^c2, capped."""
    c2 = to_mp(c2)
    R = mpmath.mpf(1)
    for k in range(-64, 65):
        if k == 0:
            continue
        z = 2j * mpmath.pi * k / c2
        if abs(mpmath.im(z)) < mpmath.pi:
            R = min(R, abs(mpmath.exp(z) - 1))
    return min(R / 3, mpmath.mpf(1) / 2)


def contour_pole_closed_form(c1, c2, n):
    c1, c2 = to_mp(c1), to_mp(c2)
    return -pochhammer(1 - c1 / c2, n) / (c2 * mpmath.factorial(n))


def contour_pole_integral(c1, c2, n, dps=None, max_nodes=2**14):
    """(1/2 pi i) times the counter-clockwise integral of x^(c1-1) / (1 - x^c2)^(n+1)
    over ``|x - 1| = eps``, principal powers near x = 1."""
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        c1, c2 = to_mp(c1), to_mp(c2)
        if c2 == 0:
            raise DomainError("c2 must be non-zero")
        eps = contour_radius(c2)
        tol = mpmath.mpf(10) ** (-dps)

        def rule(N):
            acc = 0
            for k in range(N):
                e = mpmath.expjpi(mpmath.mpf(2 * k) / N)
                x = 1 + eps * e
                lx = mpmath.log(x)
                acc += mpmath.exp((c1 - 1) * lx) / (1 - mpmath.exp(c2 * lx)) ** (n + 1) * eps * e
            return acc / N

        N = 64
        prev = rule(N)
        while N < max_nodes:
            N *= 2
            cur = rule(N)
            if abs(cur - prev) <= tol * max(1, abs(cur)):
                break
            prev = cur
        else:
            raise ConvergenceError("contour quadrature did not converge")
    with mp.workdps(dps):
        return +cur


# --- torus quadrature ------------------------------------------------------------------

def _series_value(scheme, form, dps):
    a = form.params(scheme)
    d = scheme.d
    F = pfq_series(a, [1] * d, scheme.t, dps=dps).value
    return (2j * mpmath.pi) ** d / math.prod(scheme.n) * F


def _mp_rule(scheme, form, rho, sigma, N, r):
    n, i, d = scheme.n, form.i, scheme.d
    t = to_mp(scheme.t)
    a0 = 1 - mpmath.mpf(i[0]) / n[0]
    axes = []
    for k in range(1, d + 1):
        pts = []
        for j in range(N):
            e = mpmath.expjpi(sigma * mpmath.mpf(2 * j) / N)
            x = 1 + rho * e
            q = 1 - x ** n[k]
            pts.append((q, x ** (i[k] - 1) / q * (sigma * 1j * rho * e) * 2 * mpmath.pi / N))
        axes.append(pts)
    total = 0
    worst = mpmath.mpf(0)
    for combo in itertools.product(*axes):
        P, g = 1, 1
        for q, w in combo:
            P *= q
            g *= w
        u = 1 - t / P
        x0 = mpmath.exp(mpmath.log(u) / n[0])
        worst = max(worst, abs(x0 - 1))
        val = mpmath.exp(-a0 * mpmath.log(u)) * g
        if r:
            val *= ((1 - u) / u) ** r
        total += val
    return total / n[0], worst


def _np_rule(scheme, form, rho, sigma, N, r):
    n, i, d = scheme.n, form.i, scheme.d
    t = complex(to_mp(scheme.t))
    a0 = 1 - i[0] / n[0]
    th = 2 * np.pi * np.arange(N) / N
    e = np.exp(sigma * 1j * th)
    x = 1 + float(rho) * e
    w = sigma * 1j * float(rho) * e * 2 * np.pi / N
    P = np.ones((N,) * d, dtype=complex)
    g = np.ones((N,) * d, dtype=complex)
    for k in range(1, d + 1):
        shape = [1] * d
        shape[k - 1] = N
        q = (1 - x ** n[k]).reshape(shape)
        P = P * q
        g = g * (x ** (i[k] - 1) * w).reshape(shape) / q
    u = 1 - t / P
    worst = float(np.max(np.abs(u ** (1 / n[0]) - 1)))
    val = u ** (-a0) * g
    if r:
        val = val * ((1 - u) / u) ** r
    return complex(val.sum()) / n[0], worst


def _choose_backend(d, dps, backend):
    if backend != "auto":
        return backend
    return "mpmath" if d == 1 else "numpy"


def _integrate(scheme, form, cycle, dps, backend, r, tol=None):
    d = scheme.d
    backend = _choose_backend(d, dps, backend)
    if backend == "numpy":
        rule, cap = _np_rule, (1024 if d == 1 else 256 if d == 2 else 128)
        tol = max(mpmath.mpf(10) ** (10 - dps), mpmath.mpf("1e-13")) if tol is None else tol
    else:
        rule, cap = _mp_rule, (4096 if d == 1 else 512 if d == 2 else 128)
        tol = mpmath.mpf(10) ** (-dps) if tol is None else tol
    rho = to_mp(cycle.rho)
    N = cycle.grid
    prev, worst = rule(scheme, form, rho, cycle.orientation, N, r)
    while True:
        if worst >= 0.5:
            raise DomainError("x_0 left the branch |x_0 - 1| < 1/2 on the torus")
        if N >= cap:
            raise ConvergenceError(f"torus quadrature not converged at {N} nodes per axis")
        N *= 2
        cur, worst = rule(scheme, form, rho, cycle.orientation, N, r)
        if abs(cur - prev) <= tol * max(abs(cur), mpmath.mpf(10) ** -30):
            return cur, N, backend
        prev = cur


def torus_period(scheme, form, cycle=None, dps=None, backend="auto"):
    """Quadrature of omega_i over the vanishing torus.  Needs |t| <= 0.3."""
    dps = mp.dps if dps is None else dps
    form.check(scheme)
    if form.r != 0:
        raise DomainError("use lifted_period_check for twisted forms")
    with mp.workdps(dps):
        if abs(to_mp(scheme.t)) > mpmath.mpf("0.3"):
            raise DomainError("torus cycle requires |t| <= 0.3")
    with mp.workdps(dps + GUARD):
        cycle = cycle or TorusCycle.default(scheme)
        val, _, _ = _integrate(scheme, form, cycle, dps, backend, 0)
    with mp.workdps(dps):
        return +mpmath.mpc(val)


def period_series(scheme, form, dps=None):
    """The closed-form value the torus period should reproduce."""
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps):
        return _series_value(scheme, form, dps)


def _deriv_candidates(scheme, form, r, dps):
    a = [to_mp(x) for x in form.params(scheme)]
    d = scheme.d
    t = to_mp(scheme.t)
    scale = mpmath.mpf(1)
    for x in a:
        scale *= mpmath.rf(x, r)
    scale /= mpmath.factorial(r) ** d
    Fr = scale * pfq_series([x + r for x in a], [1 + r] * d, t, dps=dps).value
    base = (2j * mpmath.pi) ** d / math.prod(scheme.n) * t**r * Fr
    a0 = a[0]
    rising = mpmath.rf(a0, r)
    falling = mpmath.ff(a0, r)
    return base / rising, base / falling


def lifted_period_check(scheme, form, cycle=None, dps=None, backend="auto"):
    """Compare the quadrature of omega^(r) with both candidate normalisations.

    Returns residuals for the rising product ``a0 (a0+1) ... (a0+r-1)`` and
    the falling product ``a0 (a0-1) ... (a0-r+1)`` and names the one that fits.
    """
    dps = mp.dps if dps is None else dps
    form.check(scheme)
    if not 1 <= form.r <= 4:
        raise DomainError("twist order must be in 1..4")
    with mp.workdps(dps + GUARD):
        cycle = cycle or TorusCycle.default(scheme)
        quad, _, used = _integrate(scheme, form, cycle, dps, backend, form.r)
        rising, falling = _deriv_candidates(scheme, form, form.r, dps + GUARD)
        res_r = abs(quad - rising) / abs(rising)
        res_f = abs(quad - falling) / abs(falling)
    with mp.workdps(dps):
        return {
            "quadrature": +mpmath.mpc(quad),
            "rising": +rising,
            "falling": +falling,
            "residual_rising": +res_r,
            "residual_falling": +res_f,
            "matches": "rising" if res_r <= res_f else "falling",
            "backend": used,
        }


def _lifted_value(scheme, form, r, cycle, dps, backend):
    f = PeriodForm(form.i, r)
    val, _, _ = _integrate(scheme, f, cycle, dps, backend, r)
    return val


def omega_recurrence_check(scheme, form, t_grid, dps=None, backend="auto"):
    """Max residual of ``t d/dt P_r = r P_r + (a_0 + r) P_(r+1)`` over ``t_grid``.

    ``P_r`` is the torus period of omega^(r); the cycle radius is held fixed
    while differencing, and the step is ``h = 10^(-P/4) t``.
    """
    dps = mp.dps if dps is None else dps
    r = form.r
    if not 0 <= r <= 3:
        raise DomainError("recurrence check supports r <= 3")
    worst = mpmath.mpf(0)
    with mp.workdps(dps + GUARD):
        a0 = 1 - mpmath.mpf(form.i[0]) / scheme.n[0]
        for t in t_grid:
            t = to_mp(t)
            if abs(t) > mpmath.mpf("0.3"):
                raise DomainError("t-grid must stay inside |t| <= 0.3")
            sch = SchemeDescriptor(scheme.n, t)
            cycle = TorusCycle.default(sch)
            h = t * mpmath.mpf(10) ** (-(dps // 4))
            plus = _lifted_value(SchemeDescriptor(scheme.n, t + h), form, r, cycle, dps, backend)
            minus = _lifted_value(SchemeDescriptor(scheme.n, t - h), form, r, cycle, dps, backend)
            here = _lifted_value(sch, form, r, cycle, dps, backend)
            nxt = _lifted_value(sch, form, r + 1, cycle, dps, backend)
            lhs = t * (plus - minus) / (2 * h)
            rhs = r * here + (a0 + r) * nxt
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), abs(here)))
    with mp.workdps(dps):
        return +worst
