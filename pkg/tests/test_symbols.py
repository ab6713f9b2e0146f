from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from hgreg.errors import DomainError
from hgreg.symbols import (
    COVERINGS,
    RossSymbol,
    calF_for_regulator,
    covering_identity_check,
    dlog_identity_residual,
    random_surface_point,
    regulator_period_residual,
    regulator_value,
    regulator_value_twisted,
    ross_vs_classical_dlog,
)

TOL = mpmath.mpf(10) ** -25


def test_symbol_validation():
    with pytest.raises(DomainError):
        RossSymbol((2, 2), (1, 2))
    with pytest.raises(DomainError):
        RossSymbol((2,), (1,))
    sym = RossSymbol((3, 2), (1, 1))
    assert len(sym.coefficients()) == 2
    with mp.workdps(30):
        # (1 - nu^i) with nu = e^(2 pi i / 3): i = 1, 2 conjugate, times (1 - (-1)) = 2
        c = dict(sym.coefficients())
        assert abs(c[(1, 1)] - mpmath.conj(c[(2, 1)])) < TOL


def test_random_points_are_deterministic_and_on_surface():
    with mp.workdps(40):
        n = (2, 3, 4)
        p, q = random_surface_point(n, "s"), random_surface_point(n, "s")
        assert p == q
        assert p.residual(n) < mpmath.mpf(10) ** -30
        fixed = random_surface_point(n, 7, t=mpmath.mpf("0.5"))
        assert fixed.t == mpmath.mpf("0.5") and fixed.residual(n) < mpmath.mpf(10) ** -30


def test_dlog_factor_against_numeric_derivative():
    # each symbol entry f = (1-x)/(1-nu x) has dlog f = (nu-1)/((1-x)(1-nu x)) dx
    with mp.workdps(40):
        nu, x = mpmath.expjpi(mpmath.mpf(2) / 3), mpmath.mpc("0.4", "0.7")
        num = mpmath.diff(lambda u: mpmath.log((1 - u) / (1 - nu * u)), x)
        assert abs(num - (nu - 1) / ((1 - x) * (1 - nu * x))) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("n,m", [((2, 2), (1, 1)), ((3, 2), (2, 1)), ((2, 3, 2), (1, 2, 1)),
                                 ((2, 2, 2, 2), (1, 1, 1, 1))])
def test_dlog_identity(n, m):
    with mp.workdps(40):
        assert dlog_identity_residual(RossSymbol(n, m), samples=10, dps=40) <= TOL


@pytest.mark.parametrize("n,m,d_odd", [((2, 2), (1, 1), True), ((2, 3, 2), (1, 1, 1), False)])
def test_omega_first_order_differs_by_sign_in_odd_d(n, m, d_odd):
    with mp.workdps(30):
        res = dlog_identity_residual(RossSymbol(n, m), samples=5, wedge_order="omega-first", dps=30)
        if d_odd:
            assert abs(res - 2) < mpmath.mpf(10) ** -20
        else:
            assert res < mpmath.mpf(10) ** -20


def test_dlog_permutation_invariance():
    with mp.workdps(30):
        a = dlog_identity_residual(RossSymbol((2, 3, 4), (1, 2, 3)), samples=5, dps=30)
        b = dlog_identity_residual(RossSymbol((4, 2, 3), (3, 1, 2)), samples=5, dps=30)
        assert a < mpmath.mpf(10) ** -20 and b < mpmath.mpf(10) ** -20


@pytest.mark.parametrize("n0,n1", [(2, 2), (3, 4)])
def test_ross_vs_classical(n0, n1):
    with mp.workdps(40):
        assert ross_vs_classical_dlog(n0, n1, samples=10, dps=40) <= TOL


@pytest.mark.parametrize("which", COVERINGS)
def test_coverings(which):
    with mp.workdps(40):
        assert covering_identity_check(which, samples=10, dps=40) <= mpmath.mpf(10) ** -28


def test_unknown_covering():
    with pytest.raises(DomainError):
        covering_identity_check("nope")


def test_regulator_twist_sign():
    sym = RossSymbol((2, 2), (1, 1))
    with mp.workdps(30):
        plain = regulator_value(sym, 2, dps=30)
        tw = regulator_value_twisted(sym, (1, 0), 2, dps=30)
        assert abs(plain + tw) < mpmath.mpf(10) ** -25


def test_regulator_matches_single_F_for_quadratic_symbol():
    # n = (2, 2): a single term (1 - (-1))^2 (2 pi i) / 4 F_(1/2,1/2)
    sym = RossSymbol((2, 2), (1, 1))
    with mp.workdps(30):
        F = calF_for_regulator((Fraction(1, 2),) * 2, 4, dps=30)
        ref = 4 * (2j * mpmath.pi) / 4 * F
        assert abs(regulator_value(sym, 4, dps=30) - ref) < mpmath.mpf(10) ** -25


def test_regulator_derivative_is_torus_period():
    with mp.workdps(30):
        res = regulator_period_residual(RossSymbol((2, 3), (1, 1)), mpmath.mpf("0.2"), dps=30)
        assert res < mpmath.mpf(10) ** -5


def test_regulator_at_one():
    # F_(1/2,1/2)(1) = 2 psi(1/2) + 2 gamma + (1/4) 4F3(3/2,3/2,1,1; 2,2,2; 1)
    with mp.workdps(30):
        ref = 2 * mpmath.digamma(0.5) + 2 * mpmath.euler + mpmath.hyper([1.5, 1.5, 1, 1], [2, 2, 2], 1) / 4
        val = regulator_value(RossSymbol((2, 2), (1, 1)), 1, dps=30)
        assert abs(val - 2j * mpmath.pi * ref) < mpmath.mpf(10) ** -25
