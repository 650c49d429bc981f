from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from etaq.numth import coprime_residues_halved, divisors, euler_phi, factorize, mobius


def test_small_values():
    assert factorize(1) == []
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    assert euler_phi(1) == 1 and euler_phi(36) == 12
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert coprime_residues_halved(15) == [1, 2, 4, 7]


@pytest.mark.parametrize("bad", [0, -4])
def test_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        factorize(bad)


def test_rejects_non_int():
    with pytest.raises(TypeError):
        mobius(2.0)


@pytest.mark.parametrize("M", [2, 1, 4])
def test_halved_residues_need_odd_M(M):
    with pytest.raises(ValueError):
        coprime_residues_halved(M)


@given(st.integers(1, 3000))
def test_factorization_roundtrip(n):
    assert prod(p**k for p, k in factorize(n)) == n


@given(st.integers(1, 600))
def test_phi_and_mobius_by_brute_force(n):
    assert euler_phi(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    # sum of mu over divisors is [n == 1]
    assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


@given(st.integers(1, 200).map(lambda k: 2 * k + 1))
def test_halved_residues_cover_half_the_units(M):
    rs = coprime_residues_halved(M)
    assert len(rs) == euler_phi(M) // 2
    assert sorted(rs + [M - r for r in rs]) == [k for k in range(1, M) if gcd(k, M) == 1]
