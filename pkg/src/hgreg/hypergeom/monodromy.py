"""Numerical monodromy of sFs-1(a; 1, ..., 1; t) around 0, 1 and infinity.

Loops are lassos based at ``alpha``: out along a tail, once around a circle
counter-clockwise, back along the same tail.  Tails that would cross the
other singular disc go around it over the top.  Matrices act on the data
vector ``(y, Dy, ..., D^(s-1) y)`` at ``alpha``, so following loop ``l`` and
then ``m`` has matrix ``M_m M_l``.

Which product ``T_0 T_1`` or ``T_1 T_0`` equals the inverse of the large
clockwise loop depends on where ``alpha`` sits relative to the tails.  Both
are formed; the one matching an independently transported large clockwise
loop is used for ``T_inf``, and that match is the reported relation residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from ..errors import DomainError
from ..numerics import to_mp
from .calf import _params
from .ode import Arc, PathSpec, hg_transport, route_around


@dataclass(frozen=True)
class MonodromyMatrix:
    base: object
    loop: str
    matrix: object

    def __post_init__(self):
        if self.loop not in ("0", "1", "inf"):
            raise DomainError(f"unknown loop {self.loop!r}")


def _detour_radius(alpha):
    return min(abs(alpha), abs(alpha - 1), 1) / 2


def _tail(alpha, p, other, radius):
    """Segments from alpha to the circle |t - p| = radius, avoiding ``other``."""
    alpha = mpmath.mpc(alpha)
    direction = (alpha - p) / abs(alpha - p)
    foot = p + radius * direction
    return route_around(alpha, foot, other, radius), mpmath.arg(direction)


def loop_path(alpha, around):
    """Closed counter-clockwise lasso at ``alpha`` around 0, 1 or infinity (clockwise)."""
    alpha = mpmath.mpc(to_mp(alpha))
    if alpha == 0 or alpha == 1:
        raise DomainError("base point must avoid 0 and 1")
    r = _detour_radius(alpha)
    if around in (0, 1):
        p, q = mpmath.mpf(around), mpmath.mpf(1 - around)
        tail, phi = _tail(alpha, p, q, r)
        circle = Arc(mpmath.mpc(p), r, phi, phi + 2 * mpmath.pi)
    elif around == "inf":
        big = max(abs(alpha), 1) + 2
        direction = alpha / abs(alpha)
        foot = big * direction
        tail = route_around(alpha, foot, 1, r)
        phi = mpmath.arg(direction)
        circle = Arc(mpmath.mpc(0), big, phi, phi - 2 * mpmath.pi)
    else:
        raise DomainError(f"unknown loop centre {around!r}")
    back = [s.reversed() for s in reversed(tail)]
    segs = tuple(tail) + (circle,) + tuple(back)
    return PathSpec(segs)


def _norm(M):
    return mpmath.mnorm(M, 1)


def _eye(n):
    return mpmath.eye(n)


def numeric_rank(M, tol):
    sv = mpmath.svd_c(mpmath.matrix(M), compute_uv=False)
    return sum(1 for x in sv if abs(x) > tol)


def match_multisets(xs, ys):
    """Greedy max distance after pairing each x with its nearest unused y."""
    ys = list(ys)
    worst = mpmath.mpf(0)
    for x in xs:
        k = min(range(len(ys)), key=lambda j: abs(ys[j] - x))
        worst = max(worst, abs(ys[k] - x))
        ys.pop(k)
    return worst


def monodromy_matrices(params, alpha, dps=None):
    params = _params(params)
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps):
        T0, e0 = hg_transport(params, loop_path(alpha, 0), dps=dps)
        T1, e1 = hg_transport(params, loop_path(alpha, 1), dps=dps)
        Tbig, e2 = hg_transport(params, loop_path(alpha, "inf"), dps=dps)
    return T0, T1, Tbig, max(e0, e1, e2)


def monodromy_report(params, alpha, dps=None):
    """Diagnostics of the local monodromies at base point ``alpha``.

    Eigenvalues of a Jordan block of size s are only determined to about
    ``eps^(1/s)``, so the loops are transported at roughly ``s P / 2`` digits.
    """
    params = _params(params)
    dps = mp.dps if dps is None else dps
    s = params.s
    work = max(dps, (s * dps + 1) // 2 + 10)
    T0, T1, Tbig, err = monodromy_matrices(params, alpha, work)
    with mp.workdps(work):
        I = _eye(s)
        forward, backward = T0 * T1, T1 * T0
        r_fwd = _norm(Tbig * forward - I)
        r_bwd = _norm(Tbig * backward - I)
        order, comp, rel = ("T0 T1", forward, r_fwd) if r_fwd <= r_bwd else ("T1 T0", backward, r_bwd)
        Tinf = comp**-1
        N = T0 - I
        unip = _norm(N**s)
        tol = mpmath.mpf(10) ** (-(dps // 2))
        rank = numeric_rank(N, tol)
        ev = mpmath.eig(Tinf, left=False, right=False)
        expected = [mpmath.expjpi(2 * to_mp(x)) for x in params.a]
        spectrum = match_multisets(ev, expected)
        report = {
            "alpha": mpmath.mpc(to_mp(alpha)),
            "T0": MonodromyMatrix(alpha, "0", T0),
            "T1": MonodromyMatrix(alpha, "1", T1),
            "Tinf": MonodromyMatrix(alpha, "inf", Tinf),
            "loop_order": order,
            "unipotency_residual": unip,
            "rank_T0_minus_I": rank,
            "rank_tolerance": tol,
            "Tinf_eigenvalues": list(ev),
            "spectrum_residual": spectrum,
            "relation_residual": rel,
            "other_order_residual": max(r_fwd, r_bwd),
            "transport_error": err,
            "working_dps": work,
        }
    with mp.workdps(dps):
        return {k: (+v if isinstance(v, (mpmath.mpf, mpmath.mpc)) else v) for k, v in report.items()}
