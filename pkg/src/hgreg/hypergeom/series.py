"""Generalized hypergeometric series with an honest truncation bound."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from ..errors import ConvergenceError, DivergenceError, DomainError
from ..numerics import GUARD, to_mp

MAX_TERMS = 10**7


@dataclass(frozen=True)
class EvalResult:
    value: object
    error_estimate: object
    method: str
    branch_note: str = ""

    def __post_init__(self):
        if self.method not in ("series", "connection", "ode"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.error_estimate < 0:
            raise ValueError("error estimate must be non-negative")


def _nonpos_int(x):
    return mpmath.im(x) == 0 and mpmath.re(x) <= 0 and mpmath.isint(mpmath.re(x))


def _prepare(upper, lower):
    upper = [to_mp(a) for a in upper]
    lower = [to_mp(b) for b in lower]
    if any(_nonpos_int(b) for b in lower):
        raise DomainError("lower parameter is a non-positive integer")
    return upper, lower


def pfq_series(upper, lower, t, dps=None, max_terms=MAX_TERMS):
    """Sum pFq(upper; lower; t) with the implicit ``n!`` in the denominator.

    For ``|t| < 1`` the tail is bounded geometrically.  At ``t = 1`` with
    p = q + 1 the tail is summed through its large-n expansion in Hurwitz
    zeta values; other points of the unit circle fall back to direct summation
    with an integral-comparison bound.
    """
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        upper, lower = _prepare(upper, lower)
        t = to_mp(t)
        tol = mpmath.mpf(10) ** (-dps)
        val, err = _sum(upper, lower, t, 0, tol, max_terms)
    with mp.workdps(dps):
        return EvalResult(+val, +err, "series")


def pfq_series_d(upper, lower, t, order, dps=None, max_terms=MAX_TERMS):
    """Return ``[D^j F(t) for j in 0..order]`` with ``D = t d/dt``, for |t| < 1."""
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        upper, lower = _prepare(upper, lower)
        t = to_mp(t)
        if not abs(t) < 1:
            raise DomainError("derivative series needs |t| < 1")
        tol = mpmath.mpf(10) ** (-dps)
        sums = [mpmath.mpf(0)] * (order + 1)
        term = mpmath.mpf(1)
        for n in range(max_terms):
            w = mpmath.mpf(1)
            for j in range(order + 1):
                sums[j] += w * term
                w *= n
            ratio = _ratio(upper, lower, n) * t
            nxt = term * ratio
            if nxt == 0:
                break
            if n > 2:
                rho = max(abs(ratio) * ((n + 2) / mpmath.mpf(n + 1)) ** order, abs(t))
                bound = abs(nxt) * (n + 1) ** order / (1 - rho) if rho < 1 else None
                if bound is not None and bound < tol * max(1, abs(sums[-1])):
                    break
            term = nxt
        else:
            raise ConvergenceError("pfq derivative series hit the term cap")
    with mp.workdps(dps):
        return [+v for v in sums]


def _ratio(upper, lower, n):
    num = mpmath.mpf(1)
    for a in upper:
        num *= a + n
    den = mpmath.mpf(n + 1)
    for b in lower:
        den *= b + n
    return num / den


def _sum(upper, lower, t, start, tol, max_terms):
    terminating = any(_nonpos_int(a) for a in upper)
    at = abs(t)
    if at > 1 and not terminating:
        raise DivergenceError("|t| > 1 outside the disc of convergence")
    p, q = len(upper), len(lower)
    if at == 1 and not terminating:
        if p != q + 1:
            raise DivergenceError("|t| = 1 needs p = q + 1")
        kappa = mpmath.re(sum(lower) - sum(upper))
        if kappa <= 0:
            raise DivergenceError("series diverges on |t| = 1 (Re kappa <= 0)")
        if t == 1:
            return _sum_at_one(upper, lower, tol)
        return _sum_unit_circle(upper, lower, t, kappa, tol, max_terms)
    acc = mpmath.mpf(0)
    term = mpmath.mpf(1)
    for n in range(max_terms):
        acc += term
        ratio = _ratio(upper, lower, n) * t
        nxt = term * ratio
        if nxt == 0:
            return acc, mpmath.mpf(0)
        rho = max(abs(ratio), at)
        if n > 2 and rho < 1:
            bound = abs(nxt) / (1 - rho)
            if bound < tol * max(1, abs(acc)):
                return acc + nxt, bound * rho
        term = nxt
    raise ConvergenceError("pfq series hit the term cap")


def _sum_unit_circle(upper, lower, t, kappa, tol, max_terms):
    acc = mpmath.mpf(0)
    term = mpmath.mpf(1)
    for n in range(max_terms):
        acc += term
        term = term * _ratio(upper, lower, n) * t
        m = n + 1
        if m > 10:
            bound = abs(term) * m / kappa
            if bound < tol * max(1, abs(acc)):
                return acc, bound
    raise ConvergenceError("slow convergence on |t| = 1: term cap reached")


def _sum_at_one(upper, lower, tol):
    """Sum at t = 1: direct head plus an asymptotic tail in Hurwitz zeta values.

    With ``b' = lower + [1]`` the term is ``T(x) = K prod G(x+a)/prod G(x+b')``
    and Stirling's series for log-gamma gives ``T(x) = K x^(-kappa-1) sum f_k x^-k``,
    so the tail from N is ``K sum f_k zeta(kappa+1+k, N)``.
    """
    bprime = list(lower) + [mpmath.mpf(1)]
    kappa = sum(bprime) - sum(upper) - 1
    big = max([abs(c) for c in list(upper) + bprime] + [1])
    digits = -mpmath.log10(tol)
    N = int(max(40, digits * 0.6 + 4 * big))
    acc = mpmath.mpf(0)
    term = mpmath.mpf(1)
    for n in range(N):
        acc += term
        term = term * _ratio(upper, lower, n)
    K = mpmath.mpf(1)
    for b in bprime:
        K *= mpmath.gamma(b)
    for a in upper:
        K /= mpmath.gamma(a)
    nmax = int(digits * 1.2) + 20
    e = [mpmath.mpf(0)]
    for m in range(1, nmax + 1):
        c = sum(mpmath.bernpoly(m + 1, a) for a in upper) - sum(
            mpmath.bernpoly(m + 1, b) for b in bprime
        )
        e.append((-1) ** (m + 1) * c / (m * (m + 1)))
    f = [mpmath.mpf(1)]
    tail = K * mpmath.zeta(kappa + 1, N)
    last = abs(tail)
    for k in range(1, nmax + 1):
        fk = sum(m * e[m] * f[k - m] for m in range(1, k + 1)) / k
        f.append(fk)
        contrib = K * fk * mpmath.zeta(kappa + 1 + k, N)
        tail += contrib
        if contrib != 0:
            last = abs(contrib)
        if last < tol * abs(acc) * mpmath.mpf(10) ** -3 and k > 4:
            break
    else:
        raise ConvergenceError("asymptotic tail at t = 1 did not settle")
    return acc + tail, last
