import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from etaq.products import bracket, euler_tag
from etaq.series import cancel_q0, expand_factors, substitute_z
from etaq.theta import (
    c_series,
    coordinate_bound,
    d_product,
    d_specialized,
    enumerate_lattice,
    f_component,
    klyachko_theta,
    qdiff_failures,
    qform,
    r_factors,
    reindex_cyclic,
    reindex_one,
    reindex_zero,
)


def test_qform():
    assert qform(3, (0, 0, 0)) == 0
    assert qform(3, (1, 0, -1)) == 1
    with pytest.raises(ValueError):
        qform(3, (1, 0, 0))


@pytest.mark.parametrize("a,T", [(2, 10), (3, 8), (4, 5), (5, 4)])
def test_enumeration_against_box_search(a, T):
    got = enumerate_lattice(a, T)
    want = oracle.lattice_sum(a, T, lambda v: [0])
    assert sum(want.values()) == len(got)
    assert all(qform(a, v) <= T for v in got)
    assert got == sorted(got)


def test_klyachko_frozen():
    # t = 2 is a one-variable theta sum: q^(n(2n+1)), n in Z
    assert list(klyachko_theta(2, 10).coeffs) == [1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]
    assert list(klyachko_theta(1, 3).coeffs) == [1, 0, 0, 0]


def test_c3_frozen_rows():
    c = c_series(3, 4)
    assert c.row(0).as_dict() == {0: 1, 1: 1, 2: 1}
    assert c.row(1).as_dict() == {-1: 1, 1: 1, 3: 1}
    assert c.row(3).as_dict() == {}
    assert c.row(4).as_dict() == {-3: 1, -2: 1, 0: 1, 2: 1, 4: 1, 5: 1}


@pytest.mark.parametrize("a", [2, 3, 4])
def test_components_against_box_search(a):
    T = 6
    for j in range(a):
        want = oracle.lattice_sum(a, T, lambda v, j=j: [-a * v[a - 1] if j == 0
                                                         else a * v[j] + j])
        got = {k: c for k, c in f_component(a, j, T).terms().items() if c}
        assert got == want


@pytest.mark.parametrize("a", [2, 3, 4, 5])
def test_product_side_equals_theta(a):
    assert expand_factors(cancel_q0(r_factors(a)), 20) == c_series(a, 20)


@given(st.integers(2, 40))
def test_coordinate_bound_is_tight(T):
    for a in (2, 3, 4):
        B = coordinate_bound(a, T)
        assert a * B * B - (a - 1) * B <= 2 * T < a * (B + 1) ** 2 - (a - 1) * (B + 1)


@pytest.mark.parametrize("a,r,M", [(2, 1, 3), (3, 1, 5), (2, 2, 5), (3, 2, 7)])
def test_two_routes_to_specialization(a, r, M):
    assert d_specialized(a, r, M, 50) == d_product(a, r, M, 50)


def random_zero_sum(rng, a, size=6):
    v = [rng.randint(-size, size) for _ in range(a - 1)]
    return tuple(v + [-sum(v)])


@pytest.mark.parametrize("a", [2, 3, 4, 5, 6])
def test_qdifference_identities_random(a):
    rng = random.Random(1000 + a)
    vecs = [random_zero_sum(rng, a) for _ in range(200)]
    assert qdiff_failures(a, vecs) == []
    for v in vecs[:20]:
        assert sum(reindex_zero(v)) == 0 and sum(reindex_one(v)) == 0
        assert all(sum(reindex_cyclic(v, j)) == 0 for j in range(1, a))


def test_shift_identity_for_r_factor_list():
    fl = r_factors(3)
    lhs = expand_factors(cancel_q0(fl.shift_zq(1)), 12)
    assert lhs == expand_factors(cancel_q0(fl), 12).mul_z(-2)
