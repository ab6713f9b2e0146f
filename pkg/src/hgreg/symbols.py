"""Higher Ross symbols at the level of differential forms, and the regulator pairing.

Symbols are never manipulated as K-theory classes.  Every identity is checked
by evaluating differential forms on random tangent frames at random points of
the total space ``(1 - x_0^n_0) ... (1 - x_d^n_d) = t`` (ambient coordinates
``x_0, ..., x_d, t``).
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .errors import DegenerateFrameError, DomainError, RetryExhaustedError
from .hypergeom.calf import HGParams, calF_connection, calF_series
from .hypergeom.ode import calF_ode, canonical_path
from .numerics import GUARD, to_mp
from .periods import PeriodForm, SchemeDescriptor, torus_period

WEDGE_ORDERS = ("dt-first", "omega-first")


def _root(m, n):
    return mpmath.expjpi(mpmath.mpf(2 * m) / n)


@dataclass(frozen=True)
class RossSymbol:
    """``{(1-x_0)/(1-nu_0 x_0), ..., (1-x_d)/(1-nu_d x_d)}`` with ``nu_k = exp(2 pi i m_k / n_k)``."""

    n: tuple
    m: tuple

    def __post_init__(self):
        n, m = tuple(int(v) for v in self.n), tuple(int(v) for v in self.m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        if len(n) != len(m) or len(n) < 2:
            raise DomainError("need matching n and nu of length d+1 >= 2")
        for nk, mk in zip(n, m):
            if nk < 2 or mk % nk == 0:
                raise DomainError("each nu_k must be a non-trivial n_k-th root of unity")

    @property
    def d(self):
        return len(self.n) - 1

    def nu(self):
        return [_root(mk, nk) for nk, mk in zip(self.n, self.m)]

    def coefficients(self, eps=None):
        """Pairs ``((i_0..i_d), prod (1 - nu_k^i_k) * prod eps_k^i_k)``."""
        nu = self.nu()
        eps = [1] * len(self.n) if eps is None else [_root(e, nk) for e, nk in zip(eps, self.n)]
        out = []
        for idx in itertools.product(*(range(1, nk) for nk in self.n)):
            c = mpmath.mpf(1)
            for k, ik in enumerate(idx):
                c *= (1 - nu[k] ** ik) * eps[k] ** ik
            out.append((idx, c))
        return out


@dataclass(frozen=True)
class SurfacePoint:
    x: tuple
    t: object

    def residual(self, n):
        P = mpmath.mpf(1)
        for xk, nk in zip(self.x, n):
            P *= 1 - xk**nk
        return abs(P - self.t)


def _crandom(rng, lo, hi):
    r = mpmath.mpf(rng.uniform(lo, hi))
    return r * mpmath.expjpi(mpmath.mpf(rng.uniform(-1, 1)))


def _admissible(x, n, margin):
    for xk, nk in zip(x, n):
        if abs(xk) < margin:
            return False
        # keep away from every n_k-th root of unity, where the forms have poles
        if abs(1 - xk**nk) < margin:
            return False
    return True


def random_surface_point(n, seed, t=None, dps=None, margin=mpmath.mpf(1) / 10):
    """Deterministic random point on the total space (or on the fibre ``t`` if given).

    ``x_1..x_d`` are uniform in angle with modulus in [1/2, 3/2]; ``t`` has
    modulus in [1/10, 9/10].  ``x_0`` is the principal ``n_0``-th root of
    ``1 - t / prod_(k>=1)(1 - x_k^n_k)``, so no Newton iteration is needed.
    """
    dps = mp.dps if dps is None else dps
    rng = random.Random(seed)
    with mp.workdps(dps + GUARD):
        for _ in range(100):
            xs = [_crandom(rng, 0.5, 1.5) for _ in n[1:]]
            tt = to_mp(t) if t is not None else _crandom(rng, 0.1, 0.9)
            P = mpmath.mpf(1)
            for xk, nk in zip(xs, n[1:]):
                P *= 1 - xk**nk
            if abs(P) < margin:
                continue
            x0 = (1 - tt / P) ** (mpmath.mpf(1) / n[0])
            x = (x0, *xs)
            if _admissible(x, n, margin):
                pt = SurfacePoint(x, tt)
                if pt.residual(n) <= mpmath.mpf(10) ** (8 - dps) * max(1, abs(tt)):
                    return pt
    raise RetryExhaustedError("no admissible surface point in 100 draws")


def _tangent_frame(pt, n, rng):
    """d+1 random tangent vectors (components dx_0..dx_d, dt) to the total space."""
    x = pt.x
    q = [1 - xk**nk for xk, nk in zip(x, n)]
    grad = []
    for k, (xk, nk) in enumerate(zip(x, n)):
        g = -nk * xk ** (nk - 1)
        for j, qj in enumerate(q):
            if j != k:
                g *= qj
        grad.append(g)
    frame = []
    for _ in range(len(n)):
        v = [mpmath.mpc(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in n]
        frame.append(v + [sum(g * c for g, c in zip(grad, v))])
    return frame


def _det(rows):
    return mpmath.det(mpmath.matrix(rows))


def _frame_check(frame, dps):
    dx = _det([[v[k] for v in frame] for k in range(len(frame))])
    scale = math.prod(float(mpmath.norm(mpmath.matrix(v[:-1]))) for v in frame)
    if abs(dx) < mpmath.mpf(10) ** (-(dps // 4)) * scale:
        raise DegenerateFrameError("sampled tangent frame is numerically singular")
    return dx


def _omega_coefficient(x, n, i):
    c = x[0] ** (i[0] - n[0]) / n[0]
    for xk, nk, ik in zip(x[1:], n[1:], i[1:]):
        c *= xk ** (ik - 1) / (1 - xk**nk)
    return c


def dlog_forms_at(symbol, pt, frame, wedge_order="dt-first"):
    """Values of ``dlog(xi)`` and of the omega-sum form on one tangent frame."""
    if wedge_order not in WEDGE_ORDERS:
        raise DomainError(f"wedge_order must be one of {WEDGE_ORDERS}")
    n, d, x, t = symbol.n, symbol.d, pt.x, pt.t
    nu = symbol.nu()
    lhs = _det([[v[k] for v in frame] for k in range(d + 1)])
    for xk, vk in zip(x, nu):
        lhs *= (vk - 1) / ((1 - xk) * (1 - vk * xk))
    dt_row = [v[-1] / t for v in frame]
    dx_rows = [[v[k] for v in frame] for k in range(1, d + 1)]
    rows = [dt_row] + dx_rows if wedge_order == "dt-first" else dx_rows + [dt_row]
    W = _det(rows)
    S = sum(c * _omega_coefficient(x, n, i) for i, c in symbol.coefficients())
    rhs = (-1) ** d * S * W
    return lhs, rhs


def dlog_identity_residual(symbol, samples=50, seed=0, wedge_order="dt-first", dps=None):
    """Max relative deviation between ``dlog(xi)`` and ``(-1)^d sum c_i omega_i wedge dt/t``.

    With ``wedge_order="dt-first"`` the (d+1)-form on the right is read as
    ``dt/t`` wedged before ``omega_i``; ``"omega-first"`` places it after.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    dps = mp.dps if dps is None else dps
    worst = mpmath.mpf(0)
    with mp.workdps(dps + GUARD):
        for j in range(samples):
            pt = random_surface_point(symbol.n, f"{seed}:{j}", dps=dps)
            frame = _tangent_frame(pt, symbol.n, random.Random(f"frame-{seed}-{j}"))
            _frame_check(frame, dps)
            lhs, rhs = dlog_forms_at(symbol, pt, frame, wedge_order)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    with mp.workdps(dps):
        return +worst


def ross_vs_classical_dlog(n0, n1, samples=50, seed=0, dps=None):
    """Compare the summed higher Ross symbols with ``n0 n1 {1-z, 1-w}``.

    At ``t = 1`` put ``z = 1/x_0``, ``w = 1/x_1``.  Every form involved is a
    multiple of ``dx_0 wedge dx_1``, so the ambient 2-forms are compared as
    scalar coefficients:

        sum_(nu_0, nu_1) dlog xi = n0 n1 dlog(1-z) dlog(1-w) + T,

    with ``T`` the exact bilinear expansion of the remaining symbols.  ``T``
    is then checked to be torsion on the curve through the relations
    ``dlog(z^n0 - 1) = n1 dlog w`` and ``dlog(w^n1 - 1) = n0 dlog z`` along
    its tangent.  Returns the larger of the two relative residuals.
    """
    dps = mp.dps if dps is None else dps
    n = (n0, n1)
    worst = mpmath.mpf(0)
    with mp.workdps(dps + GUARD):
        for j in range(samples):
            pt = random_surface_point(n, f"{seed}:{j}", t=1, dps=dps)
            x0, x1 = pt.x
            sums = []
            for xk, nk in zip(pt.x, n):
                sums.append(sum((_root(m, nk) - 1) / ((1 - xk) * (1 - _root(m, nk) * xk))
                                for m in range(1, nk)))
            lhs = sums[0] * sums[1]
            # dx-coefficients of dlog(1 - 1/x), dlog(1/x^n - 1)
            a = 1 / (x0 - 1) - 1 / x0
            b = 1 / (x1 - 1) - 1 / x1
            p = -n0 * x0 ** (n0 - 1) / (1 - x0**n0) - n0 / x0
            q = -n1 * x1 ** (n1 - 1) / (1 - x1**n1) - n1 / x1
            main = n0 * n1 * a * b
            T = -n0 * a * q - n1 * p * b + p * q
            worst = max(worst, abs(lhs - main - T) / max(abs(lhs), abs(main)))
            # curve tangent: (dF/dx1, -dF/dx0)
            F0 = -n0 * x0 ** (n0 - 1) * (1 - x1**n1)
            F1 = -n1 * x1 ** (n1 - 1) * (1 - x0**n0)
            v0, v1 = F1, -F0
            dlog_z, dlog_w = -v0 / x0, -v1 / x1
            for lhs_c, rhs_c in ((p * v0, n1 * dlog_w), (q * v1, n0 * dlog_z)):
                worst = max(worst, abs(lhs_c - rhs_c) / max(abs(lhs_c), abs(rhs_c)))
    with mp.workdps(dps):
        return +worst


# --- covering maps ---------------------------------------------------------------------

COVERINGS = ("K3-lem", "shioda-inose-1", "shioda-inose-2", "eta-differential")


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), mpmath.mpf(10) ** (-mp.dps))


def _check_k3(rng, N, n, ns, dps):
    d = len(ns)
    t = _crandom(rng, 0.1, 0.9)
    pt = random_surface_point((N,) * (d + 1), rng.getrandbits(32), t=t, dps=dps)
    x0, xs = pt.x[0], pt.x[1:]
    y = x0 ** (N - n)
    z = []
    for xi, ni in zip(xs, ns):
        y *= xi**ni * (1 - xi**N)
        z.append(1 - xi**N)
    rhs = (-t + math.prod(z)) ** (N - n)
    for zi, ni in zip(z, ns):
        rhs *= zi**n * (1 - zi) ** ni
    return _rel(y**N, rhs)


def _rho1(y0, y1, y2):
    return (y0 + 1 / y0) / 2, (y1 + 1 / y1) / 2, 1j * (y2 - 1 / y2) / 2


def _rho2(z1, z2, w1, w2):
    y0 = z2 * w1 / (z1**2 - 1)
    y1 = (-w1 * w2 + 2 * z1 * z2) / (w1 * w2 + 2 * z1 * z2)
    y2 = z1 * w2 / (z2**2 + 1)
    return y0, y1, y2


def _check_si1(rng):
    y0, y1 = _crandom(rng, 0.5, 2), _crandom(rng, 0.5, 2)
    c = 8 / ((y0 - 1 / y0) * (y1 - 1 / y1))
    y2 = (c + mpmath.sqrt(c * c - 4)) / 2
    x0, x1, x2 = _rho1(y0, y1, y2)
    return _rel((1 - x0**2) * (1 - x1**2) * (1 - x2**2), 1)


def _check_si2(rng):
    z1, z2 = _crandom(rng, 0.2, 0.8), _crandom(rng, 0.2, 0.8)
    w1, w2 = mpmath.sqrt(1 - z1**4), mpmath.sqrt(1 - z2**4)
    y0, y1, y2 = _rho2(z1, z2, w1, w2)
    return _rel((y0 - 1 / y0) * (y1 - 1 / y1) * (y2 + 1 / y2), 8)


def _check_eta(rng):
    z1, z2 = _crandom(rng, 0.2, 0.8), _crandom(rng, 0.2, 0.8)

    def xs(a, b):
        return _rho1(*_rho2(a, b, mpmath.sqrt(1 - a**4), mpmath.sqrt(1 - b**4)))

    x0, x1, x2 = xs(z1, z2)
    J = (mpmath.diff(lambda u: xs(u, z2)[0], z1) * mpmath.diff(lambda u: xs(z1, u)[1], z2)
         - mpmath.diff(lambda u: xs(z1, u)[0], z2) * mpmath.diff(lambda u: xs(u, z2)[1], z1))
    lhs = J / ((1 - x0**2) * (1 - x1**2) * x2)
    rhs = 4j / (mpmath.sqrt(1 - z1**4) * mpmath.sqrt(1 - z2**4))
    return _rel(lhs, rhs)


def covering_identity_check(which, samples=50, seed=0, dps=None, k3_params=(2, 1, (1, 1))):
    """Max relative residual of a covering-map identity over random points.

    ``K3-lem`` checks that the covering of the hypergeometric scheme with all
    exponents ``N`` satisfies the target equation ``y^N = prod z_i^n (1-z_i)^n_i
    (z_1...z_d - t)^(N-n)``; ``k3_params = (N, n, (n_1..n_d))``.
    The Shioda-Inose maps and the pulled-back 2-form use ``w_i`` as the
    principal root of ``1 - z_i^4`` with ``|z_i| <= 4/5``.
    """
    if which not in COVERINGS:
        raise DomainError(f"unknown identity {which!r}; choose from {COVERINGS}")
    dps = mp.dps if dps is None else dps
    rng = random.Random(f"{which}-{seed}")
    worst = mpmath.mpf(0)
    with mp.workdps(dps + GUARD):
        for _ in range(samples):
            if which == "K3-lem":
                N, n, ns = k3_params
                r = _check_k3(rng, N, n, tuple(ns), dps)
            elif which == "shioda-inose-1":
                r = _check_si1(rng)
            elif which == "shioda-inose-2":
                r = _check_si2(rng)
            else:
                r = _check_eta(rng)
            worst = max(worst, r)
    with mp.workdps(dps):
        return +worst


# --- regulator -------------------------------------------------------------------------

def _alpha_key(alpha):
    a = mpmath.mpc(to_mp(alpha))
    return mpmath.nstr(a.real, mp.dps + 5), mpmath.nstr(a.imag, mp.dps + 5)


@functools.lru_cache(maxsize=512)
def _calF_canonical(a, key, dps):
    """F_a at the canonical-path representative; ``a`` is a sorted tuple of Fractions."""
    params = HGParams(a)
    alpha = mpmath.mpc(mpmath.mpf(key[0]), mpmath.mpf(key[1]))
    s = len(a)
    convergent_at_circle = s - sum(a) > 0
    r = abs(alpha)
    if alpha == 1:
        if not convergent_at_circle:
            raise DomainError("F_a diverges at t = 1 for these parameters")
        return calF_series(params, 1, dps=dps).value
    if r < 1 or (r == 1 and convergent_at_circle):
        return calF_series(params, alpha, dps=dps).value
    if r > 1:
        return calF_connection(params, alpha, dps=dps).value
    return calF_ode(params, alpha, canonical_path(alpha), dps=dps).value


def calF_for_regulator(a, alpha, path=None, dps=None):
    """F_a(alpha) along ``path`` (canonical when omitted), cached per parameter multiset."""
    dps = mp.dps if dps is None else dps
    if path is not None:
        return calF_ode(HGParams(tuple(a)), alpha, path, dps=dps).value
    with mp.workdps(dps):
        key = _alpha_key(alpha)
    return _calF_canonical(tuple(sorted(Fraction(x) for x in a)), key, dps)


def _regulator(symbol, eps, alpha, path, dps):
    dps = mp.dps if dps is None else dps
    alpha_mp = to_mp(alpha)
    if alpha_mp == 0:
        raise DomainError("alpha must avoid 0")
    n, d = symbol.n, symbol.d
    with mp.workdps(dps + GUARD):
        total = mpmath.mpc(0)
        for idx, c in symbol.coefficients(eps):
            a = [1 - Fraction(ik, nk) for ik, nk in zip(idx, n)]
            total += c * calF_for_regulator(a, alpha, path, dps + GUARD)
        total *= (2j * mpmath.pi) ** d / math.prod(n)
    with mp.workdps(dps):
        return +total


def regulator_value(symbol, alpha, path=None, dps=None):
    """Pairing of the regulator of ``symbol`` with the vanishing cycle at ``alpha``.

    ``sum_i prod(1 - nu_k^i_k) (2 pi i)^d / (n_0...n_d) F_(a(i))(alpha)`` with
    ``a_k = 1 - i_k/n_k``; the sign is the ``+`` convention.  The value is a
    representative modulo ``(2 pi i)^(d+1) Q``: the one reached along ``path``
    (default: the canonical path).  ``alpha = 1`` is accepted when the
    defining series of every ``F_a`` converges there.
    """
    return _regulator(symbol, None, alpha, path, dps)


def regulator_value_twisted(symbol, eps, alpha, path=None, dps=None):
    """As :func:`regulator_value` with each term multiplied by ``prod eps_k^i_k``.

    ``eps`` lists exponent indices: ``eps_k = exp(2 pi i e_k / n_k)``.
    """
    if len(eps) != len(symbol.n):
        raise DomainError("eps length mismatch")
    return _regulator(symbol, tuple(int(e) for e in eps), alpha, path, dps)


def regulator_period_residual(symbol, alpha, dps=None):
    """``|alpha d/dalpha reg - sum_i c_i * torus period of omega_i|``, relative.

    Only for small ``|alpha|`` where the torus cycle exists; the derivative is
    a central difference with step ``10^(-P/4) alpha``.
    """
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        alpha = to_mp(alpha)
        h = alpha * mpmath.mpf(10) ** (-(dps // 4))
        deriv = alpha * (regulator_value(symbol, alpha + h, dps=dps + GUARD)
                         - regulator_value(symbol, alpha - h, dps=dps + GUARD)) / (2 * h)
        scheme = SchemeDescriptor(symbol.n, alpha)
        periods = sum(c * torus_period(scheme, PeriodForm(idx), dps=dps)
                      for idx, c in symbol.coefficients())
        res = abs(deriv - periods) / abs(periods)
    with mp.workdps(dps):
        return +res
