from fractions import Fraction

import pytest
from sympy import primerange

from hgreg.errors import BadPrimeError, DomainError
from hgreg.lfunctions.curves import (
    QuarticCurve,
    cubic_ap,
    e4_ap,
    ec_ap,
    surface_trace,
    twist_relation_check,
    weil_ok,
)


def _legendre(x, p):
    x %= p
    return 0 if x == 0 else (1 if pow(x, (p - 1) // 2, p) == 1 else -1)


def _mod(x, p):
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def _count_affine(f, p):
    squares = [0] * p
    for y in range(p):
        squares[y * y % p] += 1
    return sum(squares[f(x) % p] for x in range(p))


@pytest.mark.parametrize("alpha", ["2", "-2", "1/2", "4", "-1/8"])
def test_quartic_ap_by_point_count(alpha):
    curve = QuarticCurve(Fraction(alpha))
    for p in primerange(3, 60):
        if p in curve.bad_primes():
            continue
        c2, c0 = _mod(curve.c2, p), _mod(curve.c0, p)
        affine = _count_affine(lambda x: x**4 + c2 * x * x + c0, p)
        # smooth model has two points at infinity (leading coefficient 1 is a square)
        assert ec_ap(curve, p) == p + 1 - (affine + 2)


def test_quartic_examples():
    c = QuarticCurve(Fraction(2))
    assert (ec_ap(c, 3), ec_ap(c, 5), ec_ap(c, 13)) == (0, -2, 6)
    with pytest.raises(BadPrimeError):
        ec_ap(QuarticCurve(Fraction(3)), 3)
    with pytest.raises(DomainError):
        ec_ap(c, 9)
    with pytest.raises(DomainError):
        QuarticCurve(Fraction(1))


@pytest.mark.parametrize("alpha,twisted", [(2, False), (4, True), (Fraction(1, 3), True)])
def test_cubic_ap_by_point_count(alpha, twisted):
    alpha = Fraction(alpha)
    for p in primerange(5, 60):
        if (alpha.numerator * alpha.denominator * (1 - alpha).numerator) % p == 0:
            continue
        c = _mod(-alpha / (1 - alpha), p)
        lead = pow(_mod(1 - alpha, p), -1, p) if twisted else 1
        affine = _count_affine(lambda x: lead * (x**3 + 2 * x * x + c * x), p)
        assert cubic_ap(alpha, p, twisted) == p - affine


@pytest.mark.parametrize("alpha", [2, 4, Fraction(-1, 3)])
def test_twist_relation(alpha):
    assert twist_relation_check(alpha, 300)["ok"]


def test_e4_and_surface_trace():
    for p in primerange(3, 80):
        affine = _count_affine(lambda z: 1 - z**4, p)
        # projective model w^2 = 1 - z^4: leading coefficient -1, chi(-1) + 1 points at infinity
        assert e4_ap(p) == p + 1 - (affine + 1 + _legendre(-1, p))
        expected = e4_ap(p) ** 2 - 2 * p if p % 4 == 1 else 0
        assert surface_trace("S", p) == expected


@pytest.mark.parametrize("alpha", [2, Fraction(1, 2), 0])
def test_surface_count_brute_force(alpha):
    for p in (3, 5, 7, 11):
        if Fraction(alpha).denominator % p == 0:
            continue
        a = _mod(alpha, p)
        brute = sum(1 for x in range(p) for y in range(p) for z in range(p)
                    if (1 - x * x) * (1 - y * y) * (1 - z * z) % p == a)
        assert surface_trace(alpha, p) == brute


def test_weil_ok():
    assert weil_ok(6, 13) and not weil_ok(8, 13)
