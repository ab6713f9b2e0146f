import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import primerange

from hgreg.errors import DomainError
from hgreg.lfunctions.eta import (
    NAMED_FORMS,
    EtaProductSpec,
    eta_coeffs,
    hecke_check,
    infer_character,
    load_coeffs,
    save_coeffs,
    twist,
)


def _brute_eta_product(factors, n_max):
    """q-expansion of prod eta(m z)^e by multiplying out prod (1 - q^(m k)) directly."""
    offset = sum(m * e for m, e in factors) // 24
    series = [1] + [0] * n_max
    for m, e in factors:
        for _ in range(e):
            for k in range(1, n_max // m + 1):
                step = m * k
                for j in range(n_max, step - 1, -1):
                    series[j] -= series[j - step]
    return [0] * offset + series[: n_max + 1 - offset]


@pytest.mark.parametrize("name", sorted(NAMED_FORMS))
def test_named_forms_against_brute_force(name):
    spec = NAMED_FORMS[name]
    assert eta_coeffs(spec, 300) == _brute_eta_product(spec.factors, 300)


def test_form_a_known_coefficients():
    a = eta_coeffs(NAMED_FORMS["A"], 30)
    assert a[1] == 1 and a[5] == -6 and a[9] == 9 and a[13] == 10
    # CM by Q(i): a_p = 0 for p = 3 mod 4
    assert all(a[p] == 0 for p in (3, 7, 11, 19, 23))


def test_large_index_uses_python_ints():
    c = eta_coeffs(NAMED_FORMS["D"], 5000)
    assert len(c) == 5001 and all(isinstance(v, int) for v in c[:10])


def test_spec_validation_and_parse():
    assert EtaProductSpec.parse("2:3,6:3", 12) == NAMED_FORMS["C"]
    with pytest.raises(DomainError):
        EtaProductSpec(((1, 1),))
    with pytest.raises(DomainError):
        EtaProductSpec(((1, 24),))  # weight 12 unsupported
    assert NAMED_FORMS["A"].weight == 3 and NAMED_FORMS["A"].offset == 1


@pytest.mark.parametrize("name,disc", [("A", -4), ("C", -3), ("D", -7)])
def test_nebentypus(name, disc):
    from sympy import kronecker_symbol

    spec = NAMED_FORMS[name]
    chi = infer_character(eta_coeffs(spec, 2500), spec.level, spec.weight)
    assert all(v == kronecker_symbol(disc, p) for p, v in chi.items())


@pytest.mark.parametrize("name", sorted(NAMED_FORMS))
def test_hecke_relations(name):
    spec = NAMED_FORMS[name]
    assert hecke_check(eta_coeffs(spec, 1000), spec.level, spec.weight)["ok"]


def test_hecke_detects_corruption():
    spec = NAMED_FORMS["A"]
    c = eta_coeffs(spec, 200)
    c[65] += 1
    assert not hecke_check(c, spec.level, spec.weight)["ok"]


@given(st.sampled_from([-4, -3, 5, 8, -7, 12]))
def test_twist_twice_is_identity_on_coprime_indices(d):
    c = eta_coeffs(NAMED_FORMS["C"], 200)
    back = twist(twist(c, d), d)
    assert all(back[n] == c[n] for n in range(1, 201) if math.gcd(n, d) == 1)
    assert all(back[n] == 0 for n in range(1, 201) if math.gcd(n, d) > 1)


def test_weil_bound():
    for spec in NAMED_FORMS.values():
        c = eta_coeffs(spec, 1000)
        assert all(c[p] ** 2 <= 4 * p ** (spec.weight - 1) for p in primerange(2, 1000))


def test_cache_roundtrip(tmp_path):
    c = eta_coeffs(NAMED_FORMS["B"], 50)
    path = tmp_path / "b.csv"
    save_coeffs(path, c, "B-50")
    assert load_coeffs(path, "B-50") == c
    with pytest.raises(DomainError):
        load_coeffs(path, "other")
    path.write_text("# wrong-version x\n")
    with pytest.raises(DomainError):
        load_coeffs(path)
