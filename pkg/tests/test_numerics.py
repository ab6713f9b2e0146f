from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from hgreg.errors import DomainError, PoleError
from hgreg.numerics import (
    digamma,
    euler_gamma,
    gamma,
    ln_gamma,
    parse_number,
    pochhammer,
    precision,
    roots_of_unity,
    to_mp,
    upper_incomplete_gamma,
)
from hgreg.recognize import recognize_rational


def test_parse_number():
    assert parse_number("-1/8") == Fraction(-1, 8)
    assert parse_number(" 0.25 ") == Fraction(1, 4)
    assert parse_number("1+2i") == complex(1, 2)
    with pytest.raises(DomainError):
        parse_number("one half")


def test_to_mp_exact_fraction():
    with mp.workdps(50):
        assert to_mp(Fraction(1, 3)) == mpmath.mpf(1) / 3
        assert to_mp("1/3") == mpmath.mpf(1) / 3


def test_precision_context():
    with precision(37) as dps:
        assert dps == 37 == mp.dps


def test_gamma_family_against_closed_forms():
    with mp.workdps(50):
        assert abs(gamma(Fraction(1, 2)) - mpmath.sqrt(mpmath.pi)) < mpmath.mpf(10) ** -48
        assert abs(digamma(1) + euler_gamma()) < mpmath.mpf(10) ** -48
        # psi(1/2) = -gamma - 2 log 2
        assert abs(digamma(Fraction(1, 2)) + euler_gamma() + 2 * mpmath.log(2)) < mpmath.mpf(10) ** -48
        assert abs(ln_gamma(10) - mpmath.log(362880)) < mpmath.mpf(10) ** -47


@pytest.mark.parametrize("z", [0, -1, -7])
def test_gamma_poles(z):
    for f in (gamma, ln_gamma, digamma):
        with pytest.raises(PoleError):
            f(z)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=12), st.integers(0, 12))
def test_pochhammer_matches_gamma_ratio(a, n):
    p = pochhammer(a, n)
    assert isinstance(p, Fraction) or p == 1
    with mp.workdps(40):
        assert abs(to_mp(Fraction(p)) - mpmath.rf(to_mp(a), n)) <= mpmath.mpf(10) ** -30 * max(1, abs(to_mp(Fraction(p))))


def test_roots_of_unity():
    with mp.workdps(40):
        for n in (1, 2, 5, 12):
            roots = roots_of_unity(n)
            assert len(roots) == n
            assert all(abs(r**n - 1) < mpmath.mpf(10) ** -35 for r in roots)
            if n > 1:
                assert abs(mpmath.fsum(roots)) < mpmath.mpf(10) ** -35


@settings(max_examples=40, deadline=None)
@given(st.floats(-4.5, 6.5), st.floats(0.05, 60))
def test_upper_incomplete_gamma_real(s, x):
    with mp.workdps(40):
        ref = mpmath.gammainc(s, x)
        val = upper_incomplete_gamma(s, x)
        assert abs(val - ref) <= mpmath.mpf(10) ** -32 * max(1, abs(ref))


@pytest.mark.parametrize("s", [0, -1, -3, 1, 4, mpmath.mpc(1.5, 0.3), mpmath.mpc(0, 0.7), mpmath.mpc(3, -2)])
@pytest.mark.parametrize("x", ["0.1", "1.3", "25"])
def test_upper_incomplete_gamma_special(s, x):
    with mp.workdps(40):
        ref = mpmath.gammainc(s, mpmath.mpf(x))
        assert abs(upper_incomplete_gamma(s, x) - ref) <= mpmath.mpf(10) ** -32 * max(1, abs(ref))


def test_upper_incomplete_gamma_domain():
    with pytest.raises(DomainError):
        upper_incomplete_gamma(1, 0)


def test_recognize_rational():
    with mp.workdps(40):
        r = recognize_rational(mpmath.mpf(-3) / 8)
        assert r.accepted and r.fraction == Fraction(-3, 8) and str(r) == "-3/8"
        r = recognize_rational(mpmath.pi)
        assert not r.accepted and str(r) == "unrecognized"
        # a denominator above q_max is rejected, not forced
        assert not recognize_rational(mpmath.mpf(1) / 97).accepted
