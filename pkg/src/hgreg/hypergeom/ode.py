"""Analytic continuation along paths by a Taylor-series ODE integrator.

Both continued objects satisfy ``[D^n - t P(D)] y = 0`` with ``D = t d/dt``:

* the regulator function, ``n = s + 1`` and ``P(x) = x (x+a_1)...(x+a_s)``;
* the hypergeometric function sFs-1, ``n = s`` and ``P(x) = (x+a_1)...(x+a_s)``.

Rewriting ``D^m = sum_i S(m, i) t^i d^i/dt^i`` turns the operator into
``sum_i (A_i t^i + B_i t^(i+1)) d^i/dt^i`` with leading coefficient
``t^n (1 - t)``, which gives a linear recurrence for the Taylor coefficients at
any regular point.  Each step stays inside half the distance to ``{0, 1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from ..errors import ConvergenceError, DomainError
from ..numerics import GUARD, to_mp
from .calf import _params, calF_series
from .series import EvalResult, pfq_series_d

STEP_RATIO = mpmath.mpf("0.45")


# --- paths --------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    start: object
    end: object

    def point(self, u):
        return self.start + (self.end - self.start) * u

    def speed(self):
        return abs(self.end - self.start)

    def reversed(self):
        return Line(self.end, self.start)

    def distance(self, p):
        d = self.end - self.start
        L2 = abs(d) ** 2
        if L2 == 0:
            return abs(p - self.start)
        u = mpmath.re((p - self.start) * mpmath.conj(d)) / L2
        u = min(max(u, 0), 1)
        return abs(p - self.point(u))


@dataclass(frozen=True)
class Arc:
    center: object
    radius: object
    theta0: object
    theta1: object

    @property
    def start(self):
        return self.point(0)

    @property
    def end(self):
        return self.point(1)

    def point(self, u):
        return self.center + self.radius * mpmath.expj(self.theta0 + (self.theta1 - self.theta0) * u)

    def speed(self):
        return self.radius * abs(self.theta1 - self.theta0)

    def reversed(self):
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    def distance(self, p):
        span = self.theta1 - self.theta0
        rel = p - self.center
        if abs(span) >= 2 * mpmath.pi:
            covered = True
        elif rel == 0:
            covered = True
        else:
            phi = mpmath.arg(rel)
            off = (phi - self.theta0) if span >= 0 else (self.theta0 - phi)
            covered = off % (2 * mpmath.pi) <= abs(span)
        ends = min(abs(p - self.start), abs(p - self.end))
        if covered:
            return min(abs(abs(rel) - self.radius), ends)
        return ends


@dataclass(frozen=True)
class PathSpec:
    """Piecewise path made of lines and arcs, kept away from t = 0 and t = 1."""

    segments: tuple
    clearance: object = field(default=None)

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise DomainError("empty path")
        for s0, s1 in zip(segs, segs[1:]):
            if abs(s0.end - s1.start) > mpmath.mpf(10) ** (5 - mp.dps):
                raise DomainError("path segments are not contiguous")
        gap = self.singular_distance()
        clr = gap if self.clearance is None else to_mp(self.clearance)
        object.__setattr__(self, "clearance", clr)
        if not clr > 0 or gap < clr:
            raise DomainError(f"path comes within {mpmath.nstr(gap, 5)} of a singular point")

    @property
    def start(self):
        return self.segments[0].start

    @property
    def end(self):
        return self.segments[-1].end

    def singular_distance(self):
        return min(min(s.distance(mpmath.mpf(0)), s.distance(mpmath.mpf(1))) for s in self.segments)

    def reversed(self):
        return PathSpec(tuple(s.reversed() for s in reversed(self.segments)), self.clearance)

    def then(self, other):
        return PathSpec(self.segments + other.segments, min(self.clearance, other.clearance))

    def conjugate(self):
        segs = []
        for s in self.segments:
            if isinstance(s, Line):
                segs.append(Line(mpmath.conj(s.start), mpmath.conj(s.end)))
            else:
                segs.append(Arc(mpmath.conj(s.center), s.radius, -s.theta0, -s.theta1))
        return PathSpec(tuple(segs), self.clearance)


def route_around(z0, z1, q, radius):
    """Segments from z0 to z1 that replace any chord through |t - q| < radius
    by a clockwise arc of that circle (over the top when travelling rightwards).
    """
    z0, z1, q = mpmath.mpc(z0), mpmath.mpc(z1), mpmath.mpc(q)
    d = z1 - z0
    w = z0 - q
    A = abs(d) ** 2
    B = 2 * mpmath.re(w * mpmath.conj(d))
    C = abs(w) ** 2 - radius**2
    end_inside = abs(z1 - q) < radius
    disc = B * B - 4 * A * C
    if A == 0 or disc <= 0:
        return [Line(z0, z1)]
    r = mpmath.sqrt(disc)
    u_in, u_out = (-B - r) / (2 * A), (-B + r) / (2 * A)
    if not end_inside and (u_in >= 1 or u_out <= 0):
        return [Line(z0, z1)]
    if u_in < 0:
        raise DomainError("route start lies inside the detour disc")
    p_in = z0 + d * u_in
    phi_in = mpmath.arg(p_in - q)
    segs = [Line(z0, p_in)] if u_in > 0 else []
    target = mpmath.arg(z1 - q) if end_inside else mpmath.arg(z0 + d * u_out - q)
    two_pi = 2 * mpmath.pi
    while target > phi_in:
        target -= two_pi
    while target <= phi_in - two_pi:
        target += two_pi
    arc = Arc(q, mpmath.mpf(radius), phi_in, target)
    segs.append(arc)
    if abs(arc.end - z1) > 0:
        segs.append(Line(arc.end, z1))
    return [s for s in segs if s.speed() > 0]


def canonical_path(t_end, t0=mpmath.mpf(1) / 10, radius=mpmath.mpf(1) / 4):
    """Canonical continuation path from ``t0`` to ``t_end``.

    Counter-clockwise arc on ``|t| = t0`` to ``arg(t_end)`` (principal value),
    then the ray to ``t_end``, passing t = 1 clockwise over the top on the
    circle of radius 1/4 whenever the ray meets that disc.
    """
    t_end = mpmath.mpc(to_mp(t_end))
    t0 = to_mp(t0)
    if t_end == 0 or t_end == 1:
        raise DomainError("t_end must avoid 0 and 1")
    theta = mpmath.arg(t_end)
    segs = []
    if theta != 0:
        segs.append(Arc(mpmath.mpc(0), t0, mpmath.mpf(0), theta))
    p = t0 * mpmath.expj(theta)
    if abs(t_end - p) > 0:
        segs.extend(route_around(p, t_end, 1, radius))
    if not segs:
        segs = [Line(mpmath.mpc(t0), mpmath.mpc(t0))]
    clear = min(t0, radius, abs(t_end), abs(t_end - 1)) / 2
    return PathSpec(tuple(segs), clear)


def straight_path(t_start, t_end):
    return PathSpec((Line(mpmath.mpc(to_mp(t_start)), mpmath.mpc(to_mp(t_end))),))


def _nodes(path, ratio=STEP_RATIO):
    """Points along the path, each within ratio * (distance to {0,1}) of the last."""
    pts = [path.start]
    for seg in path.segments:
        speed = seg.speed()
        if speed == 0:
            continue
        u = mpmath.mpf(0)
        c = seg.point(0)
        while u < 1:
            rho = min(abs(c), abs(c - 1))
            u = min(u + ratio * rho / speed, mpmath.mpf(1))
            c = seg.point(u)
            pts.append(c)
    return pts


# --- operators ------------------------------------------------------------------


def _stirling2(n):
    S = [[0] * (n + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for m in range(1, n + 1):
        for i in range(1, m + 1):
            S[m][i] = i * S[m - 1][i] + S[m - 1][i - 1]
    return S


class ThetaOperator:
    """``D^n - t P(D)`` with monic ``P`` of degree ``n``, in d/dt form."""

    def __init__(self, n, pcoeffs):
        if len(pcoeffs) != n + 1 or pcoeffs[-1] != 1:
            raise DomainError("P must be monic of degree n")
        self.n = n
        S = _stirling2(n)
        self.A = [S[n][i] for i in range(n + 1)]
        self.B = [-sum(pcoeffs[m] * S[m][i] for m in range(i, n + 1)) for i in range(n + 1)]
        self.S = S

    @classmethod
    def for_calF(cls, a):
        return cls(len(a) + 1, [0] + _poly_from_roots(a))

    @classmethod
    def for_hypergeometric(cls, a):
        return cls(len(a), _poly_from_roots(a))

    def theta_to_d(self, t):
        """Lower-triangular M with (D^j y) = sum_i M[j][i] y^(i)."""
        n = self.n
        return [[self.S[j][i] * t**i if i <= j else 0 for i in range(n)] for j in range(n)]

    def to_derivs(self, t, dvec):
        M = self.theta_to_d(t)
        out = []
        for j in range(self.n):
            acc = dvec[j] - sum(M[j][i] * out[i] for i in range(j))
            out.append(acc / M[j][j])
        return out

    def to_theta(self, t, derivs):
        M = self.theta_to_d(t)
        return [sum(M[j][i] * derivs[i] for i in range(j + 1)) for j in range(self.n)]

    def step(self, c, h, columns, tol, max_order=20000):
        """Advance each column of d/dt-derivatives from c to c + h."""
        n = self.n
        binom = math.comb
        Q = []
        for i in range(n + 1):
            row = []
            for l in range(i + 2):
                v = 0
                if l <= i:
                    v += self.A[i] * binom(i, l) * c ** (i - l)
                v += self.B[i] * binom(i + 1, l) * c ** (i + 1 - l)
                row.append(v)
            Q.append(row)
        lead = Q[n][0]
        G = [[Q[i][l] * h ** (n - i + l) / lead for l in range(i + 2)] for i in range(n + 1)]
        pairs = [(i, l, G[i][l]) for i in range(n + 1) for l in range(i + 2)
                 if (i, l) != (n, 0) and G[i][l] != 0]
        out, err = [], mpmath.mpf(0)
        for y in columns:
            Z = [y[i] * h**i / math.factorial(i) for i in range(n)]
            scale = max([abs(z) for z in Z] + [mpmath.mpf(0)])
            quiet = 0
            K = 0
            while True:
                acc = 0
                for i, l, g in pairs:
                    if l > K:
                        continue
                    m = K - l + i
                    acc += g * _ff(m, i) * Z[m]
                znew = -acc / _ff(K + n, n)
                Z.append(znew)
                az = abs(znew)
                scale = max(scale, az)
                quiet = quiet + 1 if az <= tol * scale else 0
                if quiet > n + 1:
                    break
                K += 1
                if K > max_order:
                    raise ConvergenceError("Taylor recurrence did not settle")
            derivs = []
            for i in range(n):
                acc = 0
                for k in range(i, len(Z)):
                    acc += _ff(k, i) * Z[k]
                derivs.append(acc / h**i)
            out.append(derivs)
            err = max(err, tol * scale * len(Z))
        return out, err


def _ff(m, i):
    out = 1
    for k in range(i):
        out *= m - k
    return out


def _poly_from_roots(a):
    """Coefficients (low to high) of prod (x + a_j)."""
    coeffs = [mpmath.mpf(1)]
    for x in a:
        new = [mpmath.mpf(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] += c
            new[k] += x * c
        coeffs = new
    return coeffs


def transport(op, path, columns_theta, dps):
    """Carry theta-derivative vectors (D^j y) along ``path``; returns (vectors, err)."""
    nodes = _nodes(path)
    tol = mpmath.mpf(10) ** (-dps - 5)
    c = nodes[0]
    cols = [op.to_derivs(c, col) for col in columns_theta]
    err = mpmath.mpf(0)
    for nxt in nodes[1:]:
        h = nxt - c
        if h == 0:
            continue
        cols, e = op.step(c, h, cols, tol)
        err += e
        c = nxt
    return [op.to_theta(c, col) for col in cols], err


def calF_ode(params, t_end, path=None, dps=None):
    """Continue F_a from the path's start (real, in (0, 0.3]) to ``t_end``."""
    params = _params(params)
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        if path is None:
            path = canonical_path(t_end)
        t0 = path.start
        if mpmath.im(t0) != 0 or not 0 < mpmath.re(t0) <= mpmath.mpf("0.3"):
            raise DomainError("path must start on the real segment (0, 0.3]")
        if abs(path.end - to_mp(t_end)) > mpmath.mpf(10) ** (5 - dps):
            raise DomainError("path does not end at t_end")
        t0 = mpmath.re(t0)
        a = params.mp()
        s = len(a)
        start = calF_series(params, t0, dps=dps + GUARD)
        G = pfq_series_d(a, [1] * (s - 1), t0, s - 1, dps=dps + GUARD)
        vec = [start.value] + list(G)
        op = ThetaOperator.for_calF(a)
        (res,), err = transport(op, path, [vec], dps + GUARD)
        val = res[0]
        err += start.error_estimate
    with mp.workdps(dps):
        return EvalResult(+val, +err, "ode", "continued along path from t0 = %s" % mpmath.nstr(t0, 5))


def hg_transport(params, path, dps=None, kind="hypergeometric"):
    """Transport matrix M with v(end) = M v(start) in the basis (y, Dy, ...).

    ``kind="hypergeometric"`` uses the order-s operator of sFs-1;
    ``kind="calF"`` the order-(s+1) operator of the regulator function.
    """
    params = _params(params)
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        a = params.mp()
        op = ThetaOperator.for_hypergeometric(a) if kind == "hypergeometric" else ThetaOperator.for_calF(a)
        n = op.n
        unit = [[mpmath.mpf(1) if i == j else mpmath.mpf(0) for i in range(n)] for j in range(n)]
        cols, err = transport(op, path, unit, dps + GUARD)
        M = mpmath.matrix(n, n)
        for j, col in enumerate(cols):
            for i in range(n):
                M[i, j] = col[i]
    with mp.workdps(dps):
        return M, +err
