"""The regulator function F_a(t) near t = 0 and its connection formula at t = inf.

``F_a(t) = sum(psi(a_k) + gamma) + log t + (a_1...a_s) t F(t)`` where
``F(t) = s+2 F s+1 (a+1, 1, 1; 2, ..., 2; t)``.  Its logarithmic derivative
``t F_a'(t)`` is ``sFs-1(a; 1, ..., 1; t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from ..errors import DomainError, ExtrapolationError
from ..numerics import GUARD, digamma, euler_gamma, gamma, parse_number, to_mp
from .series import EvalResult, pfq_series


@dataclass(frozen=True)
class HGParams:
    """Parameters ``(a_1, ..., a_s)``; optional provenance ``((n_k, i_k), ...)``."""

    a: tuple
    provenance: tuple | None = None

    def __post_init__(self):
        a = tuple(self.a)
        object.__setattr__(self, "a", a)
        if not a:
            raise DomainError("need at least one parameter")
        for x in a:
            xm = to_mp(x)
            if mpmath.im(xm) == 0 and mpmath.re(xm) <= 0 and mpmath.isint(mpmath.re(xm)):
                raise DomainError(f"parameter {x} is a non-positive integer")
        if self.provenance is not None:
            prov = tuple(tuple(p) for p in self.provenance)
            object.__setattr__(self, "provenance", prov)
            if len(prov) != len(a):
                raise DomainError("provenance length mismatch")
            for (n, i), x in zip(prov, a):
                if not 0 < i < n:
                    raise DomainError(f"index {i} outside (0, {n})")
                if Fraction(x) != 1 - Fraction(i, n):
                    raise DomainError("a_k must equal 1 - i_k/n_k")

    @classmethod
    def from_indices(cls, n, i):
        a = tuple(1 - Fraction(ik, nk) for nk, ik in zip(n, i))
        return cls(a, tuple(zip(n, i)))

    @classmethod
    def parse(cls, text):
        return cls(tuple(parse_number(x) for x in text.split(",")))

    @property
    def s(self):
        return len(self.a)

    def mp(self):
        return [to_mp(x) for x in self.a]

    def is_degenerate(self):
        """True when some a_i - a_j is an integer (i != j)."""
        vals = self.mp()
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                d = vals[i] - vals[j]
                if mpmath.im(d) == 0 and mpmath.isint(mpmath.re(d)):
                    return True
        return False


def _params(params):
    return params if isinstance(params, HGParams) else HGParams(tuple(params))


def calF_series(params, t, dps=None):
    """Evaluate F_a(t) from its defining series (principal log), |t| <= 1."""
    params = _params(params)
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        a = params.mp()
        t = to_mp(t)
        if t == 0:
            raise DomainError("F_a has a logarithmic singularity at t = 0")
        prod = mpmath.mpf(1)
        for x in a:
            prod *= x
        F = pfq_series([x + 1 for x in a] + [1, 1], [2] * (len(a) + 1), t, dps=dps + 5)
        head = sum(digamma(x) + euler_gamma() for x in a)
        val = head + mpmath.log(t) + prod * t * F.value
        err = abs(prod * t) * F.error_estimate
    with mp.workdps(dps):
        return EvalResult(+val, +err, "series", "principal log t")


def connection_terms(a, t):
    """Return ``(C_j, H_j(t))`` pairs for generic parameters, |t| < 1."""
    s = len(a)
    mt = -t
    out = []
    for j in range(s):
        aj = a[j]
        lower = [1 - a[k] + aj for k in range(s) if k != j] + [1 + aj]
        # (-t)^a_j with arg(-t) in (-pi, pi]
        power = mpmath.exp(aj * mpmath.log(mt))
        H = power / aj * pfq_series([aj] * (s + 1), lower, t).value
        C = gamma(1 - aj) ** (1 - s)
        for k in range(s):
            if k != j:
                C *= gamma(a[k] - aj) / gamma(a[k])
        out.append((C, H))
    return out


def _connection_generic(a, t):
    return mpmath.mpc(0, mpmath.pi) - sum(C * H for C, H in connection_terms(a, t))


def calF_connection(params, t_inv, dps=None, levels=4, cross_check=False):
    """Evaluate F_a at a large argument ``t_inv`` (so ``t = 1/t_inv`` is small).

    Degenerate parameter sets are shifted to ``a_j + j*eps`` and the limit
    eps -> 0 is taken by Richardson extrapolation over ``levels`` halvings of
    ``eps0 = 10^(-P/4)``.  The shifts cost about ``(s-1)(P/4)`` digits, which
    are added to the working precision.
    """
    params = _params(params)
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        t_big = to_mp(t_inv)
        if abs(t_big) <= 1:
            raise DomainError("connection formula needs |t_inv| > 1")
        a = params.mp()
        s = len(a)
        if not mpmath.re(sum(a)) < s:
            raise DomainError("connection formula needs Re(sum a) < s")
    note = "arg(-t) in (-pi, pi]; constant pi*i"
    if not params.is_degenerate():
        with mp.workdps(dps + GUARD):
            val = _connection_generic(a, 1 / t_big)
        err = mpmath.mpf(10) ** (-dps)
    else:
        val, err = _richardson(params, t_big, dps, levels)
        note += f"; eps-limit over {levels} levels"
    with mp.workdps(dps):
        result = EvalResult(+val, +err, "connection", note)
    if cross_check:
        from .ode import calF_ode, canonical_path

        ode = calF_ode(params, t_inv, canonical_path(t_inv), dps=dps)
        result = _compare_branches(result, ode, dps)
    return result


def _richardson(params, t_big, dps, levels):
    s = params.s
    q = dps // 4 + 2
    work = dps + (s - 1) * q + GUARD
    with mp.workdps(work):
        a0 = params.mp()
        t = 1 / to_mp(t_big)
        eps0 = mpmath.mpf(10) ** (-(dps // 4))
        rows = []
        for lvl in range(levels):
            eps = eps0 / 2**lvl
            shifted = [x + (j + 1) * eps for j, x in enumerate(a0)]
            row = [_connection_generic(shifted, t)]
            for m in range(1, lvl + 1):
                f = mpmath.mpf(2) ** m
                row.append((f * row[m - 1] - rows[-1][m - 1]) / (f - 1))
            rows.append(row)
        best = rows[-1][-1]
        err = abs(best - rows[-1][-2]) if levels > 1 else abs(best)
        tol = mpmath.mpf(10) ** (-(dps // 2))
        if err > tol * max(1, abs(best)):
            raise ExtrapolationError(
                f"eps-levels disagree by {mpmath.nstr(err, 3)} (> {mpmath.nstr(tol, 3)})"
            )
        return best, err


def _compare_branches(conn, ode, dps):
    from ..recognize import recognize_rational

    with mp.workdps(dps):
        diff = conn.value - ode.value
        tol = mpmath.mpf(10) ** (10 - dps)
        if abs(diff) <= tol * max(1, abs(ode.value)):
            return EvalResult(conn.value, max(conn.error_estimate, abs(diff)), "connection",
                              conn.branch_note + "; agrees with ode")
        ratio = diff / (2j * mpmath.pi)
        rec = recognize_rational(mpmath.re(ratio), q_max=64) if abs(mpmath.im(ratio)) < tol else None
        if rec is None or not rec.accepted:
            from ..errors import BranchMismatchError

            raise BranchMismatchError(f"connection - ode = {mpmath.nstr(diff, 10)}")
        return EvalResult(conn.value, conn.error_estimate, "connection",
                          conn.branch_note + f"; differs from ode by 2*pi*i*{rec.fraction}")


def calF_half_half_closed_form(t):
    """``-2 t^(-1/2) 3F2(1/2,1/2,1/2; 1, 3/2; 1/t)``; its real part is Re F_(1/2,1/2)(t), t > 1."""
    t = to_mp(t)
    h = mpmath.mpf(1) / 2
    return -2 / mpmath.sqrt(t) * pfq_series([h, h, h], [1, 1 + h], 1 / t).value
