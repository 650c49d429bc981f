from fractions import Fraction

import pytest

import oracle
from etaq.saito import (
    CaseThree,
    CaseTwo,
    PrimePower,
    bracket_regrouping,
    classify,
    coprime_product,
    mobius_product,
    nonneg_report,
    saito_prefactor,
    saito_series,
    verify_case2,
    verify_case3,
)


def test_s6_frozen():
    _, s = saito_series(6, 20)
    assert list(s.coeffs) == [1, 1, 1, 1, 1, 2, 0, 1, 1, 1, 2, 1, 1, 0, 1, 2, 1, 0, 2, 1, 1]


def test_s6_against_oracle():
    order = 30
    num = oracle.mul(oracle.mul(oracle.euler(6, order), oracle.euler(2, order), order),
                     oracle.euler(3, order), order)
    want = oracle.uni(oracle.mul(num, oracle.pochhammer_inv(0, 1, 1, order), order), order)
    assert list(saito_series(6, order)[1].coeffs) == want


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_prime_prefactor(p):
    assert saito_prefactor(p) == Fraction(p * p - 1, 24)


def test_classify():
    assert classify(9) == PrimePower(3, 2)
    assert classify(15) == CaseTwo(3, 5)
    assert classify(10) == CaseTwo(2, 5)
    assert classify(45) == CaseThree(3, 2, 5, 15)
    assert classify(12) == CaseThree(2, 2, 3, 6)
    # even N takes p = 2 first
    assert classify(18) == CaseTwo(2, 9)
    with pytest.raises(ValueError):
        classify(1)


@pytest.mark.parametrize("N", [10, 15, 18, 21, 33, 35])
def test_case_two(N):
    r = verify_case2(N, 100)
    assert r.passed, r.first_discrepancy


@pytest.mark.parametrize("N,p", [(12, None), (45, None), (18, 3), (50, 5), (28, None)])
def test_case_three(N, p):
    r = verify_case3(N, 100, p)
    assert r.passed, r.first_discrepancy


def test_case_guards():
    with pytest.raises(ValueError):
        verify_case2(12, 10)
    with pytest.raises(ValueError):
        verify_case3(15, 10)
    with pytest.raises(ValueError):
        verify_case3(18, 10, p=4)


@pytest.mark.parametrize("M", [1, 2, 6, 9, 30])
def test_mobius_dual_route(M):
    assert mobius_product(M, 60) == coprime_product(M, 60)


@pytest.mark.parametrize("M", [3, 5, 9, 15])
def test_bracket_regrouping(M):
    assert bracket_regrouping(M, 60) == coprime_product(M, 60)


def test_nonneg_report_json():
    r = nonneg_report(30, 50)
    assert r.passed
    assert r.to_dict() == {"N": 30, "order": 50, "prefactor": "31/3", "pass": True,
                           "firstNegative": None}
