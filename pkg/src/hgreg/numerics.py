"""Precision handling and the special functions used across the package.

All big-float work is carried by :mod:`mpmath`.  Precision is a property of
the evaluation context: wrap a computation in :func:`precision` (or pass
``dps=`` to the top-level entry points) and every helper below honours the
active ``mp.dps``.

Notes
-----
``mpmath`` keeps its working precision in module-global state, so concurrent
evaluations at *different* precisions must run in separate processes.
"""

from __future__ import annotations

import functools
import os
from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import mp

from .errors import ConvergenceError, DomainError, PoleError

DEFAULT_DPS = int(os.environ.get("HGREG_DPS", "64"))
GUARD = 10


@contextmanager
def precision(dps=None):
    """Run the enclosed block at ``dps`` decimal digits (default from env)."""
    with mp.workdps(DEFAULT_DPS if dps is None else int(dps)):
        yield mp.dps


def to_mp(x):
    """Convert ints, Fractions, strings like ``"1/2"`` and complexes to mpmath."""
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return to_mp(parse_number(x))
    if isinstance(x, complex):
        return mpmath.mpc(x)
    return mpmath.mpf(x)


def parse_number(text):
    """Parse ``"3"``, ``"-1/8"``, ``"0.25"`` or ``"1+2j"``.

    Rationals come back as :class:`~fractions.Fraction` so they stay exact.
    """
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError as exc:
        raise DomainError(f"cannot parse number {text!r}") from exc


# --- constants -------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _constants(dps):
    with mp.workdps(dps):
        return +mp.euler, +mp.pi, +mp.ln2


def euler_gamma():
    return _constants(mp.dps)[0]


def pi():
    return _constants(mp.dps)[1]


def log2():
    return _constants(mp.dps)[2]


# --- Gamma family -------------------------------------------------------------

def _check_pole(z):
    z = to_mp(z)
    if mpmath.im(z) == 0 and mpmath.re(z) <= 0 and mpmath.isint(mpmath.re(z)):
        raise PoleError(f"pole at non-positive integer {mpmath.nstr(z, 8)}")
    return z


def gamma(z):
    return mpmath.gamma(_check_pole(z))


def ln_gamma(z):
    """Principal log-gamma, continuous on the plane cut along (-inf, 0]."""
    return mpmath.loggamma(_check_pole(z))


def digamma(z):
    return mpmath.digamma(_check_pole(z))


def pochhammer(a, n):
    """Rising factorial by the product definition; exact for Fraction input."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    out = 1 if isinstance(a, (int, Fraction)) else to_mp(1)
    for k in range(n):
        out *= a + k
    return out


def roots_of_unity(n):
    if n < 1:
        raise DomainError("n must be positive")
    return [mpmath.expjpi(mpmath.mpf(2 * k) / n) for k in range(n)]


# --- upper incomplete gamma ----------------------------------------------------

def upper_incomplete_gamma(s, x):
    """Gamma(s, x) for x > 0.

    Integer ``s`` uses closed forms (finite sum for s >= 1, the exponential
    integral and downward recurrence for s <= 0).  Otherwise the Legendre
    continued fraction is used when ``x > |s| + 1`` and the lower-gamma power
    series below that line.
    """
    x = to_mp(x)
    if not x > 0:
        raise DomainError("upper_incomplete_gamma needs x > 0")
    s = to_mp(s)
    with mp.workdps(mp.dps + GUARD):
        if mpmath.im(s) == 0 and mpmath.isint(mpmath.re(s)):
            out = _gamma_inc_int(int(mpmath.re(s)), x)
        elif x > abs(s) + 1:
            out = _gamma_inc_cf(s, x)
        else:
            out = _gamma_near_pole(s, x)
    return +out


def _gamma_near_pole(s, x):
    # Gamma(s) and the lower series both blow up like 1/dist near s = -k; pay the digits back
    k = max(0, -int(mpmath.nint(mpmath.re(s))))
    dist = abs(s + k)
    extra = max(0, int(-mpmath.log10(dist)) + 1) if dist < 1 else 0
    with mp.workdps(mp.dps + extra):
        return gamma(s) - _gamma_lower_series(s, x)


def _gamma_inc_int(k, x):
    if k >= 1:
        term = mpmath.mpf(1)
        acc = term
        for j in range(1, k):
            term = term * x / j
            acc += term
        return mpmath.factorial(k - 1) * mpmath.exp(-x) * acc
    val = _e1(x)
    # Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s, walked down from s = 0
    for s in range(-1, k - 1, -1):
        val = (val - x ** s * mpmath.exp(-x)) / s
    return val


def _e1(x):
    if x > 1:
        return _gamma_inc_cf(mpmath.mpf(0), x)
    tol = mpmath.eps
    acc = mpmath.mpf(0)
    term = mpmath.mpf(1)
    k = 1
    while True:
        term = -term * x / k
        contrib = term / k
        acc += contrib
        if abs(contrib) < tol:
            break
        k += 1
    return -euler_gamma() - mpmath.log(x) - acc


def _gamma_inc_cf(s, x, max_iter=100000):
    # modified Lentz on the even contraction of Legendre's fraction
    tiny = mpmath.mpf(10) ** (-2 * mp.dps)
    tol = mpmath.eps
    b = x + 1 - s
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, max_iter):
        an = -i * (i - s)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < tol:
            return mpmath.exp(-x + s * mpmath.log(x)) * h
    raise ConvergenceError("incomplete gamma continued fraction did not converge")


def _gamma_lower_series(s, x, max_iter=100000):
    tol = mpmath.eps
    term = 1 / s
    acc = term
    for n in range(1, max_iter):
        term = term * x / (s + n)
        acc += term
        if abs(term) < tol * abs(acc):
            return mpmath.exp(-x + s * mpmath.log(x)) * acc
    raise ConvergenceError("incomplete gamma series did not converge")
