from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from hgreg.errors import DivergenceError, DomainError
from hgreg.hypergeom import (
    HGParams,
    calF,
    calF_connection,
    calF_half_half_closed_form,
    calF_ode,
    calF_series,
    canonical_path,
    monodromy_report,
    pfq_series,
    pfq_series_d,
    straight_path,
)
from hgreg.verify import printed_digits_match

H = Fraction(1, 2)
TOL30 = mpmath.mpf(10) ** -30


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.fractions(Fraction(1, 7), 3, max_denominator=7), min_size=2, max_size=3),
    st.floats(-0.9, 0.9).filter(lambda x: abs(x) > 1e-3),
)
def test_pfq_series_against_mpmath_hyper(a, t):
    lower = [Fraction(3, 2)] * (len(a) - 1)
    with mp.workdps(40):
        ref = mpmath.hyper([mpmath.mpf(x.numerator) / x.denominator for x in a],
                           [mpmath.mpf(3) / 2] * (len(a) - 1), t)
        val = pfq_series(a, lower, t, dps=40).value
        assert abs(val - ref) <= TOL30 * max(1, abs(ref))


def test_pfq_at_one_gauss():
    # 2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))
    with mp.workdps(40):
        a, b, c = mpmath.mpf(1) / 3, mpmath.mpf(1) / 4, mpmath.mpf(2)
        ref = mpmath.gamma(c) * mpmath.gamma(c - a - b) / (mpmath.gamma(c - a) * mpmath.gamma(c - b))
        assert abs(pfq_series([a, b], [c], 1, dps=40).value - ref) < TOL30


def test_pfq_diverges_outside_disc():
    with pytest.raises(DivergenceError):
        pfq_series([H, H], [1], 2)
    with pytest.raises(DivergenceError):
        pfq_series([H, H], [1], 1)  # kappa = 0


def test_pfq_series_d_matches_numeric_derivative():
    with mp.workdps(40):
        a, t = [H, H, H], mpmath.mpf("0.3")
        vals = pfq_series_d(a, [1, 1], t, 2, dps=40)
        f = lambda u: mpmath.hyper([0.5] * 3, [1, 1], u)  # noqa: E731
        assert abs(vals[0] - f(t)) < TOL30
        assert abs(vals[1] - t * mpmath.diff(f, t)) < mpmath.mpf(10) ** -25


def test_hgparams_validation():
    with pytest.raises(DomainError):
        HGParams((0, H))
    p = HGParams.from_indices((2, 4), (1, 3))
    assert p.a == (H, Fraction(1, 4))
    assert HGParams((H, H)).is_degenerate()
    assert not HGParams((Fraction(1, 3), H)).is_degenerate()


@pytest.mark.parametrize("a", [(H,), (H, H), (Fraction(1, 3), Fraction(2, 3), H)])
@pytest.mark.parametrize("t", ["0.2", "-0.5", "0.3+0.4j"])
def test_theta_of_calF_is_hypergeometric(a, t):
    # t dF/dt = sF(s-1)(a; 1, ..., 1; t)
    with mp.workdps(40):
        t = mpmath.mpmathify(t.replace("j", "j"))
        am = [mpmath.mpf(x.numerator) / x.denominator for x in a]
        deriv = mpmath.diff(lambda u: calF_series(a, u).value, t)
        ref = mpmath.hyper(am, [1] * (len(a) - 1), t)
        assert abs(t * deriv - ref) < mpmath.mpf(10) ** -25


def test_one_parameter_closed_form():
    # s = 1: F_a(t) = psi(a) + gamma + log t + int_0^t ((1-u)^(-a) - 1) du/u; compare by quadrature
    with mp.workdps(40):
        a, t = mpmath.mpf(1) / 2, mpmath.mpf(1) / 4
        integral = mpmath.quad(lambda u: ((1 - u) ** (-a) - 1) / u, [0, t])
        ref = mpmath.digamma(a) + mpmath.euler + mpmath.log(t) + integral
        assert abs(calF((H,), Fraction(1, 4), dps=40).value - ref) < TOL30


@pytest.mark.parametrize("alpha", [2, 4, 8, Fraction(-1, 2), -4])
def test_half_half_real_part_against_3f2(alpha):
    # Re F_(1/2,1/2)(alpha) = -2 alpha^(-1/2) 3F2(1/2,1/2,1/2; 1, 3/2; 1/alpha) for alpha > 1
    with mp.workdps(40):
        val = calF((H, H), alpha, dps=40).value
        if alpha > 1:
            al = mpmath.mpf(alpha)
            ref = -2 / mpmath.sqrt(al) * mpmath.hyp3f2(0.5, 0.5, 0.5, 1, 1.5, 1 / al)
            assert abs(mpmath.re(val) - ref) < TOL30
            assert abs(calF_half_half_closed_form(alpha) - ref) < TOL30
        else:
            assert mpmath.isfinite(val)


def test_table_values():
    with mp.workdps(30):
        assert printed_digits_match(mpmath.re(calF((H, H), 2, dps=30).value), "-1.4866664931", sig=9)
        assert printed_digits_match(mpmath.re(calF((H, H, H), 64, dps=30).value), "-0.821372862231", sig=12)


@pytest.mark.parametrize("t", [Fraction(1, 4), Fraction(-1, 2), mpmath.mpc("0.2", "0.5")])
def test_ode_agrees_with_series_inside_disc(t):
    with mp.workdps(40):
        ser = calF_series((H, H, H), t, dps=40).value
        ode = calF_ode((H, H, H), t, dps=40).value
        assert abs(ser - ode) < TOL30


@pytest.mark.parametrize("alpha", [3, 16, -5, mpmath.mpc(2, 3)])
def test_connection_agrees_with_ode(alpha):
    with mp.workdps(40):
        c = calF_connection((H, H), alpha, dps=40).value
        o = calF_ode((H, H), alpha, dps=40).value
        assert abs(c - o) < mpmath.mpf(10) ** -25


def test_generic_connection_agrees_with_ode():
    a = (Fraction(1, 3), Fraction(3, 5))
    with mp.workdps(40):
        c = calF_connection(a, 5, dps=40).value
        o = calF_ode(a, 5, dps=40).value
        assert abs(c - o) < TOL30


def test_conjugation_equivariance():
    # real parameters: F(conj t) along the conjugate path = conj F(t)
    with mp.workdps(30):
        t = mpmath.mpc(3, 1)
        p = canonical_path(t)
        v = calF_ode((H, H), t, p, dps=30).value
        w = calF_ode((H, H), mpmath.conj(t), p.conjugate(), dps=30).value
        assert abs(w - mpmath.conj(v)) < mpmath.mpf(10) ** -25


def test_ode_path_must_start_on_segment():
    with pytest.raises(DomainError):
        calF_ode((H, H), 2, straight_path(-0.1, 2), dps=20)


@pytest.mark.slow
def test_monodromy_half_half():
    with mp.workdps(30):
        rep = monodromy_report((H, H), Fraction(1, 4), dps=30)
        assert rep["rank_T0_minus_I"] == 1
        assert rep["unipotency_residual"] < mpmath.mpf(10) ** -15
        assert rep["spectrum_residual"] < mpmath.mpf(10) ** -12
        assert rep["relation_residual"] < mpmath.mpf(10) ** -12


def test_monodromy_generic_spectrum():
    a = (Fraction(1, 3), Fraction(1, 5))
    with mp.workdps(30):
        rep = monodromy_report(a, Fraction(1, 4), dps=30)
        assert rep["spectrum_residual"] < mpmath.mpf(10) ** -12
        assert rep["relation_residual"] < mpmath.mpf(10) ** -12
