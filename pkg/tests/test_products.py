from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracle
from etaq.products import (
    EtaQuotientSpec,
    bracket,
    eta_quotient,
    euler_series,
    finite_pochhammer,
    gaussian_poly,
    q_pochhammer_series,
)
from etaq.series import expand_factors


def test_parse_and_print():
    spec = EtaQuotientSpec.parse("5^5 * 1^-1")
    assert spec.as_dict() == {1: -1, 5: 5}
    assert str(spec) == "1^-1 * 5^5"
    assert EtaQuotientSpec.parse("2 * 2^(-3)").as_dict() == {2: -2}


@pytest.mark.parametrize("text", ["", "x^2", "0^1", "2^1 * 2^-1"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        EtaQuotientSpec.parse(text)


def test_two_cores_and_prefactor():
    e = eta_quotient(EtaQuotientSpec.parse("2^2 * 1^-1"), 10)
    assert e.prefactor == Fraction(1, 8)
    assert list(e.series.coeffs) == [1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]


@given(st.dictionaries(st.integers(1, 6), st.integers(-3, 3), min_size=1)
       .filter(lambda d: any(d.values())))
def test_eta_quotient_matches_naive_product(terms):
    order = 15
    e = eta_quotient(EtaQuotientSpec(terms), order)
    acc = oracle.one()
    for k, ex in terms.items():
        f = oracle.euler(k, order) if ex > 0 else oracle.pochhammer_inv(0, k, k, order)
        acc = oracle.mul(acc, oracle.power(f, abs(ex), order), order)
    assert list(e.series.coeffs) == oracle.uni(acc, order)
    assert e.prefactor == Fraction(sum(k * x for k, x in terms.items()), 24)


def test_euler_series_dilation():
    assert list(euler_series(3, 12).coeffs) == oracle.uni(oracle.euler(3, 12), 12)


def test_bracket_rejects_unreduced_shift():
    with pytest.raises(ValueError):
        bracket(1, 3, 3)


def test_bracket_expansion():
    assert expand_factors(bracket(2, 1, 3), 9).terms() == {
        k: c for k, c in oracle.bracket(2, 1, 3, 9).items()}


def test_finite_pochhammer():
    b = expand_factors(finite_pochhammer(1, 1, 2, 3), 12)
    assert {k: c for k, c in b.terms().items() if c} == oracle.pochhammer(1, 1, 2, 12, count=3)


def test_q_pochhammer_series():
    assert list(q_pochhammer_series(2, 1, 2, 6).coeffs) == [1, 0, -1, -1, 0, 1, 0]
    assert list(q_pochhammer_series(0, 1, None, 3).coeffs) == [0, 0, 0, 0]


def q_pascal(n, m):
    """[n+m choose m] via [N, k] = [N-1, k-1] + q^k [N-1, k]."""
    N = n + m
    table = {(0, 0): [1]}
    for a in range(1, N + 1):
        for k in range(0, a + 1):
            left = table.get((a - 1, k - 1), [0])
            right = [0] * k + table.get((a - 1, k), [0])
            size = max(len(left), len(right))
            table[(a, k)] = [(left[i] if i < len(left) else 0)
                             + (right[i] if i < len(right) else 0) for i in range(size)]
    out = table[(N, m)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@given(st.integers(0, 7), st.integers(0, 7))
def test_gaussian_poly_against_q_pascal(n, m):
    g = list(gaussian_poly(n, m).coeffs)
    assert g == q_pascal(n, m)
    assert g == g[::-1]  # palindromic
    assert g == list(gaussian_poly(m, n).coeffs)
    assert all(c > 0 for c in g)


def test_gaussian_small():
    assert list(gaussian_poly(2, 2).coeffs) == [1, 1, 2, 1, 1]
