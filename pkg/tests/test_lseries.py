from dataclasses import replace
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp
from sympy import kronecker_symbol

from hgreg.errors import DomainError
from hgreg.lfunctions.eta import NAMED_FORMS, EtaProductSpec, eta_coeffs
from hgreg.lfunctions.lseries import (
    LSeries,
    conductor_sign_search,
    direct_bracket,
    eta_lseries,
    fe_residual,
    lambda_completed,
    lprime_at_0,
    lprime_cross_check,
    quartic_lprime,
    sieve_coefficients,
    theta_residual,
)
from hgreg.verify import printed_digits_match

# L(E, 1) for the conductor-11 curve eta(z)^2 eta(11 z)^2, a widely tabulated constant
L_11A_AT_1 = "0.253841860855910684337758923351"


def test_lseries_validation():
    with pytest.raises(DomainError):
        LSeries((0, 2, 1), 2, 11, 1)
    with pytest.raises(DomainError):
        LSeries((0, 1, 1), 2, 11, 0)


def test_elliptic_curve_11a_central_value():
    spec = EtaProductSpec(((1, 2), (11, 2)), 11)
    with mp.workdps(30):
        L = eta_lseries(spec, 30)
        val = lambda_completed(L, 1, dps=30) * 2 * mpmath.pi / mpmath.sqrt(11)
        assert abs(val - mpmath.mpf(L_11A_AT_1)) < mpmath.mpf(10) ** -28


def test_insufficient_coefficients():
    spec = NAMED_FORMS["A"]
    L = LSeries(eta_coeffs(spec, 20), 3, 16, 1)
    with pytest.raises(DomainError):
        lambda_completed(L, 1, dps=30)


def test_functional_equation_grid():
    with mp.workdps(30):
        L = eta_lseries(NAMED_FORMS["A"], 30)
        grid = [mpmath.mpc(x, y) for x, y in ((0.5, 0), (1.5, 0.2), (1.5, 1), (2.2, -0.4), (3, 2))]
        assert fe_residual(L, grid, dps=30) < mpmath.mpf(10) ** -25


@pytest.mark.parametrize("wrong", [8, 32])
def test_wrong_level_is_rejected(wrong):
    with mp.workdps(30):
        right = eta_lseries(NAMED_FORMS["A"], 30)
        bad = eta_lseries(replace(NAMED_FORMS["A"], level=wrong), 30)
        assert theta_residual(right, dps=30) < mpmath.mpf(10) ** -25
        assert theta_residual(bad, dps=30) > mpmath.mpf(10) ** -4
        assert fe_residual(bad, dps=30) > mpmath.mpf(10) ** -4


def test_wrong_sign_is_rejected():
    with mp.workdps(30):
        L = eta_lseries(NAMED_FORMS["C"], 30, sign=-1)
        assert theta_residual(L, dps=30) > mpmath.mpf(10) ** -4


def test_sieve_reproduces_eta_coefficients():
    spec = NAMED_FORMS["A"]
    ref = eta_coeffs(spec, 600)
    built = sieve_coefficients(lambda p: ref[p], 600, 3, bad={2: 0}, chi=lambda p: int(kronecker_symbol(-4, p)))
    assert built == ref


def test_lprime_cross_check_and_bracket():
    with mp.workdps(30):
        L = eta_lseries(NAMED_FORMS["D"], 30)
        assert lprime_cross_check(L, 30) < mpmath.mpf(10) ** -25
        val, tail = direct_bracket(L, 30)
        lam3 = lambda_completed(L, 3, dps=30)
        assert tail is not None and abs(val - lam3) <= tail


def test_eta_lprime_values():
    with mp.workdps(30):
        c = lprime_at_0(eta_lseries(NAMED_FORMS["C"], 40), 30)
        assert printed_digits_match(c, "0.30161498741294074646905293114776839989", sig=25)


def test_conductor_search_separates_candidates():
    found = conductor_sign_search(Fraction(2), dps=30)
    assert found["residual"] < mpmath.mpf(10) ** -20
    assert found["runner_up"] > mpmath.mpf(10) ** -4


def test_quartic_lprime_row():
    with mp.workdps(30):
        val, found, _ = quartic_lprime(Fraction(-2), 30)
        assert printed_digits_match(val, "2.42449751304", sig=11)
