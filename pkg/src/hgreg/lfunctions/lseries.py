"""Completed L-functions by the smoothed approximate functional equation.

Convention: ``Lambda(s) = (sqrt(N)/(2 pi))^s Gamma(s) L(s)`` and
``Lambda(s) = w Lambda(k - s)``.  For any ``lam > 0``

    Lambda(s) = sum a_n (sqrt(N)/(2 pi n))^s Gamma(s, 2 pi n lam / sqrt(N))
              + w sum a_n (sqrt(N)/(2 pi n))^(k-s) Gamma(k-s, 2 pi n / (lam sqrt(N))),

so agreement across ``lam`` tests the conductor and sign.  Because Gamma has a
simple pole at 0, ``L(0) = 0`` and ``Lambda(0) = L'(0)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp
from sympy import primerange

from ..errors import AmbiguousConductorError, BadPrimeError, DomainError
from ..numerics import GUARD, to_mp, upper_incomplete_gamma
from .curves import QuarticCurve, ec_ap


@dataclass(frozen=True)
class LSeries:
    """Dirichlet coefficients ``coeffs[n] = a_n`` (``coeffs[0]`` unused)."""

    coeffs: tuple
    weight: int
    level: int
    sign: int
    label: str = ""
    bad_factors: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) < 2 or self.coeffs[1] != 1:
            raise DomainError("need a_1 = 1")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.level < 1 or self.weight < 1:
            raise DomainError("level and weight must be positive")

    @property
    def n_max(self):
        return len(self.coeffs) - 1

    def weil_violations(self, good_only=True):
        out = []
        for p in primerange(2, self.n_max + 1):
            if good_only and self.level % p == 0:
                continue
            if self.coeffs[p] ** 2 > 4 * p ** (self.weight - 1):
                out.append(p)
        return out


def coeffs_needed(level, dps, lam=mpmath.mpf("1.2")):
    """Terms for the lam-split sum to reach ``10^-dps`` (both halves)."""
    lam = max(to_mp(lam), 1 / to_mp(lam))
    x = (dps + 5) * math.log(10) * float(lam) * math.sqrt(level) / (2 * math.pi)
    return int(1.1 * x) + 20


def _check_terms(L, dps, lam):
    need = coeffs_needed(L.level, dps, lam)
    if L.n_max < need:
        raise DomainError(f"insufficient coefficients: have {L.n_max}, need {need}")


def lambda_completed(L, s, lam=1, dps=None):
    """``Lambda(s)`` to about ``10^(-dps)`` absolute error (scaled by the terms)."""
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        lam = to_mp(lam)
        _check_terms(L, dps, lam)
        s = to_mp(s)
        k = L.weight
        rootN = mpmath.sqrt(L.level)
        c = 2 * mpmath.pi / rootN
        tol = mpmath.mpf(10) ** (-(dps + 5))
        first = second = mpmath.mpf(0)
        for n in range(1, L.n_max + 1):
            a = L.coeffs[n]
            if a == 0:
                continue
            x1, x2 = c * n * lam, c * n / lam
            t1 = a * (c * n) ** (-s) * upper_incomplete_gamma(s, x1)
            t2 = a * (c * n) ** (s - k) * upper_incomplete_gamma(k - s, x2)
            first += t1
            second += t2
            if x1 > 20 and x2 > 20 and abs(t1) + abs(t2) < tol * abs(first + L.sign * second):
                break
        val = first + L.sign * second
    with mp.workdps(dps):
        return +val


def fe_residual(L, s_points=None, lam=mpmath.mpf("1.1"), dps=None):
    """``max |Lambda(s) - w Lambda(k-s)| / |Lambda(s)|`` with a non-symmetric split."""
    dps = mp.dps if dps is None else dps
    k = L.weight
    if s_points is None:
        s_points = [mpmath.mpc(k / 2, 0.3), mpmath.mpc(k / 2, 0.7)]
    worst = mpmath.mpf(0)
    with mp.workdps(dps + GUARD):
        for s in s_points:
            a = lambda_completed(L, s, lam, dps)
            b = L.sign * lambda_completed(L, k - to_mp(s), lam, dps)
            worst = max(worst, abs(a - b) / max(abs(a), mpmath.mpf(10) ** (-dps)))
    with mp.workdps(dps):
        return +worst


def theta_residual(L, y=mpmath.mpf("1.1"), dps=None):
    """``|theta(1/y) - w y^k theta(y)|`` relative, ``theta(y) = sum a_n exp(-2 pi n y / sqrt N)``."""
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        y = to_mp(y)
        c = 2 * mpmath.pi / mpmath.sqrt(L.level)
        limit = min(L.n_max, coeffs_needed(L.level, dps, y))

        def theta(u):
            q = mpmath.exp(-c * u)
            acc, qn = mpmath.mpf(0), mpmath.mpf(1)
            for n in range(1, limit + 1):
                qn *= q
                if L.coeffs[n]:
                    acc += L.coeffs[n] * qn
            return acc

        lhs = theta(1 / y)
        rhs = L.sign * y**L.weight * theta(y)
        res = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
    with mp.workdps(dps):
        return +res


def lprime_at_0(L, dps=None):
    """``L'(0) = Lambda(0)`` from the split at ``lam = 1``."""
    return mpmath.re(lambda_completed(L, 0, 1, dps))


def lprime_cross_check(L, dps=None):
    """``|Lambda(0) - w Lambda(k)|`` with the two sides split at different ``lam``."""
    dps = mp.dps if dps is None else dps
    with mp.workdps(dps + GUARD):
        a = lambda_completed(L, 0, 1, dps)
        b = L.sign * lambda_completed(L, L.weight, mpmath.mpf("1.2"), dps)
        res = abs(a - b)
    with mp.workdps(dps):
        return +res


def direct_bracket(L, dps=None):
    """Bracket ``Lambda(k)`` by the partial Dirichlet sum and a divisor-bound tail.

    Uses ``|a_n| <= d(n) n^((k-1)/2)`` and ``d(n) <= 2 sqrt(n)``; the tail
    bound is finite only for ``k >= 3`` (``None`` otherwise).
    """
    dps = mp.dps if dps is None else dps
    k = L.weight
    with mp.workdps(dps + GUARD):
        M = L.n_max
        S = mpmath.fsum(mpmath.mpf(L.coeffs[n]) / mpmath.mpf(n) ** k for n in range(1, M + 1))
        scale = (mpmath.sqrt(L.level) / (2 * mpmath.pi)) ** k * mpmath.gamma(k)
        if k < 3:
            return scale * S, None
        tail = 2 * mpmath.zeta(mpmath.mpf(k) / 2, M + 1)
        return scale * S, scale * tail


# --- coefficients from Euler factors ---------------------------------------------------

def sieve_coefficients(ap, n_max, weight, bad=None, chi=None):
    """Multiplicative ``a_n`` for ``n <= n_max`` from prime data.

    ``ap(p)`` gives good-prime traces, ``bad`` maps bad primes to ``a_p``
    (then ``a_(p^e) = a_p^e``) and ``chi(p)`` is the nebentypus (trivial by
    default).  Each ``n`` is split as ``p^e m`` with ``p`` its smallest prime.
    """
    bad = bad or {}
    a = [0] * (n_max + 1)
    a[1] = 1
    spf = list(range(n_max + 1))
    for i in range(2, math.isqrt(n_max) + 1):
        if spf[i] == i:
            for j in range(i * i, n_max + 1, i):
                if spf[j] == j:
                    spf[j] = i
    cache = {}
    for n in range(2, n_max + 1):
        p = spf[n]
        e, m = 0, n
        while m % p == 0:
            m //= p
            e += 1
        if p not in cache:
            pk = p ** (weight - 1)
            powers = [1]
            if p in bad:
                while p ** len(powers) <= n_max:
                    powers.append(powers[-1] * bad[p])
            else:
                x = ap(p)
                c = 1 if chi is None else chi(p)
                while p ** len(powers) <= n_max:
                    prev = powers[-2] if len(powers) > 1 else 0
                    powers.append(x * powers[-1] - c * pk * prev)
            cache[p] = powers
        a[n] = cache[p][e] * a[m]
    return a


def quartic_coefficients(alpha, n_max, bad):
    """``a_n`` of ``X_alpha`` from point counts at good primes and chosen bad traces."""
    curve = QuarticCurve(Fraction(alpha))

    def ap(p):
        if p in curve.bad_primes():
            raise BadPrimeError(f"no trace chosen for bad prime {p}")
        return ec_ap(curve, p)

    return sieve_coefficients(ap, n_max, 2, bad)


def quartic_candidates(alpha):
    """Conductor/sign/bad-trace candidates for ``X_alpha``.

    ``2^e`` with ``e <= 8``; each odd prime dividing ``m q (q - m)`` for
    ``alpha = m/q`` with exponent 1 (``a_p = +-1``) or 2 (``a_p = 0``).
    """
    alpha = Fraction(alpha)
    odd = [p for p in QuarticCurve(alpha).bad_primes() if p != 2]
    two = [(0, a2) for a2 in range(-2, 3)] + [(1, 1), (1, -1)] + [(e, 0) for e in range(2, 9)]
    odd_opts = [[(1, 1), (1, -1), (2, 0)] for _ in odd]
    out = []
    for (e2, a2), combo in itertools.product(two, itertools.product(*odd_opts)):
        N = 2**e2
        bad = {}
        if e2:
            bad[2] = a2
        for p, (e, ap) in zip(odd, combo):
            N *= p**e
            bad[p] = ap
        for w in (1, -1):
            out.append({"level": N, "sign": w, "bad": bad, "a2_good": a2 if e2 == 0 else None})
    return out


def conductor_sign_search(alpha, dps=30, candidates=None, y=mpmath.mpf("1.1")):
    """Pick the candidate minimising the theta-symmetry residual at ``y``.

    Returns a dict with the winning ``LSeries`` (coefficients sufficient for
    ``dps``), its residual, the runner-up residual and the winner's
    functional-equation residual at ``s = 1 + 0.3i, 1 + 0.7i``.  Raises
    :class:`AmbiguousConductorError` when the winner's residual exceeds
    ``10^(6 - dps/2)``.
    """
    alpha = Fraction(alpha)
    candidates = candidates if candidates is not None else quartic_candidates(alpha)
    curve = QuarticCurve(alpha)
    n_all = max(coeffs_needed(c["level"], dps, y) for c in candidates)
    traces = {p: ec_ap(curve, p) for p in primerange(3, n_all + 1) if p not in curve.bad_primes()}
    scored = []
    with mp.workdps(dps):
        for cand in candidates:
            n_c = coeffs_needed(cand["level"], dps, y)
            bad = dict(cand["bad"])
            local = dict(traces)
            if cand["a2_good"] is not None:
                local[2] = cand["a2_good"]
            coeffs = sieve_coefficients(lambda p: local[p], n_c, 2, bad)
            L = LSeries(coeffs, 2, cand["level"], cand["sign"], f"X_{alpha}")
            scored.append((theta_residual(L, y, dps), cand))
    scored.sort(key=lambda item: item[0])
    best_res, best = scored[0]
    threshold = mpmath.mpf(10) ** (6 - dps / 2)
    if best_res > threshold:
        raise AmbiguousConductorError(
            f"alpha = {alpha}: best theta residual {mpmath.nstr(best_res, 3)} above {mpmath.nstr(threshold, 3)}")
    return {
        "alpha": alpha,
        "level": best["level"],
        "sign": best["sign"],
        "bad": best["bad"],
        "a2_good": best["a2_good"],
        "residual": best_res,
        "runner_up": scored[1][0] if len(scored) > 1 else None,
    }


def quartic_lseries(alpha, level, sign, bad, dps, a2_good=None):
    curve = QuarticCurve(Fraction(alpha))
    n = coeffs_needed(level, dps)
    local = {}

    def ap(p):
        if p == 2 and a2_good is not None:
            return a2_good
        if p not in local:
            local[p] = ec_ap(curve, p)
        return local[p]

    coeffs = sieve_coefficients(ap, n, 2, dict(bad))
    return LSeries(coeffs, 2, level, sign, f"X_{Fraction(alpha)}", dict(bad))


def quartic_lprime(alpha, dps=None, search_dps=30):
    """``L'(X_alpha, 0)`` with conductor and sign from :func:`conductor_sign_search`."""
    dps = mp.dps if dps is None else dps
    found = conductor_sign_search(alpha, search_dps)
    L = quartic_lseries(alpha, found["level"], found["sign"], found["bad"], dps + GUARD,
                        found["a2_good"])
    with mp.workdps(dps + GUARD):
        val = lprime_at_0(L, dps + GUARD)
    with mp.workdps(dps):
        return +val, found, L


def eta_lseries(spec, dps, sign=1):
    from .eta import eta_coeffs

    if spec.level is None:
        raise DomainError("eta product needs a level")
    coeffs = eta_coeffs(spec, coeffs_needed(spec.level, dps))
    return LSeries(coeffs, spec.weight, spec.level, sign, "eta" + str(spec.factors))
