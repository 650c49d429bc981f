import pytest
from hypothesis import given, strategies as st

import oracle
from etaq.pcore import (
    conjugate,
    count_tcores,
    hook_lengths,
    is_tcore,
    partitions,
    positivity_scan,
    tcore_series,
)


def test_partitions_count():
    assert [sum(1 for _ in partitions(n)) for n in range(12)] == oracle.partitions_count(11)


def test_hooks():
    assert hook_lengths((3, 1)) == [4, 2, 1, 1]
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)


@given(st.integers(0, 12).flatmap(lambda n: st.sampled_from(list(partitions(n)))),
       st.integers(1, 8))
def test_tcore_iff_no_hook_divisible_by_t(lam, t):
    assert is_tcore(lam, t) == all(h % t for h in hook_lengths(lam))


def test_three_cores_frozen():
    assert [count_tcores(3, n) for n in range(6)] == [1, 1, 2, 0, 2, 1]


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_generating_function(t):
    assert list(tcore_series(t, 14).coeffs) == [count_tcores(t, n) for n in range(15)]


def test_guards():
    with pytest.raises(ValueError):
        count_tcores(3, 41)
    with pytest.raises(ValueError):
        positivity_scan(3, 5, 10)


def test_positivity_scan():
    assert positivity_scan(4, 6, 100).passed
