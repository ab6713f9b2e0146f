"""Frobenius traces of the curves attached to a rational parameter alpha.

* ``X_alpha``: ``y^2 = (1 - x^2)(1 - alpha - x^2)``, the quartic whose
  L-value is paired with ``F_(1/2,1/2)(alpha)``.
* ``E_alpha``: ``y^2 = x(x^2 + 2x - alpha/(1-alpha))`` and its ``(1-alpha)``
  quadratic twist ``E'_alpha``.
* ``E: w^2 = 1 - z^4`` and the surface ``(1-x_0^2)(1-x_1^2)(1-x_2^2) = alpha``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, kronecker_symbol, primefactors, primerange

from .._kernels import legendre_table, poly_char_sum, surface_count
from ..errors import BadPrimeError, DomainError


@functools.lru_cache(maxsize=4096)
def _chi(p):
    return legendre_table(p)


def _mod(x, p):
    """Reduce a Fraction modulo p (denominator must be a unit)."""
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def _check_prime(p):
    if p < 3 or not isprime(p):
        raise DomainError(f"{p} is not an odd prime")


@dataclass(frozen=True)
class QuarticCurve:
    """``y^2 = x^4 + c2 x^2 + c0`` with ``c2 = alpha - 2``, ``c0 = 1 - alpha``."""

    alpha: Fraction

    def __post_init__(self):
        a = Fraction(self.alpha)
        object.__setattr__(self, "alpha", a)
        if a in (0, 1):
            raise DomainError("alpha must avoid 0 and 1")

    @property
    def c2(self):
        return self.alpha - 2

    @property
    def c0(self):
        return 1 - self.alpha

    def discriminant(self):
        # disc(x^4 + b x^2 + c) = 16 c (b^2 - 4c)^2, and b^2 - 4c = alpha^2 here
        return 16 * self.c0 * self.alpha**4

    def bad_primes(self):
        a = self.alpha
        return sorted({2} | set(primefactors(a.numerator)) | set(primefactors(a.denominator))
                      | set(primefactors((1 - a).numerator)))

    def to_json(self):
        return {"type": "quartic", "alpha": str(self.alpha)}


def ec_ap(curve, p):
    """``a_p = -1 - sum_x chi(f(x))`` at an odd good prime (two points at infinity)."""
    _check_prime(p)
    if p in curve.bad_primes():
        raise BadPrimeError(f"p = {p} is bad for alpha = {curve.alpha}")
    coeffs = [1, 0, _mod(curve.c2, p), 0, _mod(curve.c0, p)]
    return -1 - poly_char_sum(coeffs, p, _chi(p))


def _cubic_bad(alpha):
    a = Fraction(alpha)
    return {2} | set(primefactors(a.numerator)) | set(primefactors(a.denominator)) | set(
        primefactors((1 - a).numerator))


def cubic_ap(alpha, p, twisted=False):
    """``a_p`` of ``E_alpha`` (or of ``E'_alpha`` when ``twisted``) by a direct count."""
    _check_prime(p)
    alpha = Fraction(alpha)
    if p in _cubic_bad(alpha):
        raise BadPrimeError(f"p = {p} is bad for E_{alpha}")
    c = _mod(-alpha / (1 - alpha), p)
    lead = pow(_mod(1 - alpha, p), -1, p) if twisted else 1
    # (1-alpha) y^2 = g(x)  <=>  y^2 = g(x)/(1-alpha)
    coeffs = [lead, 2 * lead % p, lead * c % p, 0]
    return -poly_char_sum(coeffs, p, _chi(p))


def twist_relation_check(alpha, p_bound):
    """Check ``a_p(E'_alpha) = chi_(1-alpha)(p) a_p(E_alpha)`` for good p < p_bound."""
    alpha = Fraction(alpha)
    if alpha in (0, 1):
        raise DomainError("alpha must avoid 0 and 1")
    d = (1 - alpha).numerator * (1 - alpha).denominator
    bad = _cubic_bad(alpha)
    failures, checked = [], 0
    for p in primerange(3, p_bound):
        if p in bad:
            continue
        chi = int(kronecker_symbol(d, p))
        lhs, rhs = cubic_ap(alpha, p, True), chi * cubic_ap(alpha, p)
        checked += 1
        if lhs != rhs:
            failures.append((p, lhs, rhs))
    return {"alpha": alpha, "checked": checked, "failures": failures, "ok": not failures}


def e4_ap(p):
    """``a_p`` of ``w^2 = 1 - z^4``: ``-sum chi(1 - z^4) - chi(-1)``."""
    _check_prime(p)
    return -poly_char_sum([p - 1, 0, 0, 0, 1], p, _chi(p)) - int(_chi(p)[p - 1])


def surface_trace(alpha, p):
    """Frobenius trace on the transcendental part for ``"S"``, else an affine count.

    For ``alpha == "S"`` return ``a_p(E)^2 - 2p`` when ``p = 1 mod 4`` and 0
    otherwise.  For a rational ``alpha`` return the number of affine F_p
    points of ``(1-x_0^2)(1-x_1^2)(1-x_2^2) = alpha`` (an O(p^2) count).
    """
    _check_prime(p)
    if alpha == "S":
        return e4_ap(p) ** 2 - 2 * p if p % 4 == 1 else 0
    alpha = Fraction(alpha)
    if alpha.denominator % p == 0:
        raise BadPrimeError(f"p = {p} divides the denominator of alpha")
    return surface_count(_mod(alpha, p), p, _chi(p))


def weil_ok(ap, p, weight=2):
    return ap * ap <= 4 * p ** (weight - 1)
