"""Theta sums over the zero-sum lattice and the product side they equal.

For ``n`` in Z^a with ``sum(n) = 0`` put ``Q_a(n) = (a/2) n.n + b.n`` with
``b = (0, 1, ..., a-1)``.  The component sums are::

    F_j(z; q) = sum z^(a n_j + j) q^Q(n)      (1 <= j <= a-1)
    F_0(z; q) = sum z^(-a n_{a-1}) q^Q(n)

and ``C_a = F_0 + ... + F_{a-1}``.  The product side is
``R_a = E(q) E(q^a)^(a-2) [z^a; q^a]_inf / [z; q]_inf``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .products import bracket, euler_series, euler_tag
from .series import BiSeries, FactorList, UniSeries, substitute_z

__all__ = [
    "qform",
    "coordinate_bound",
    "enumerate_lattice",
    "klyachko_theta",
    "f_component",
    "c_series",
    "theta_zfloor",
    "r_factors",
    "d_specialized",
    "d_product",
    "reindex_cyclic",
    "reindex_zero",
    "reindex_one",
    "qdiff_failures",
    "shift_source_order",
]


def qform(a: int, v: Sequence[int]) -> int:
    """``(a/2) v.v + (0, 1, ..., a-1).v`` for a zero-sum vector ``v``."""
    if len(v) != a:
        raise ValueError(f"expected {a} coordinates, got {len(v)}")
    if sum(v) != 0:
        raise ValueError(f"vector {tuple(v)} does not sum to zero")
    nn = sum(x * x for x in v)
    # sum x^2 = sum x = 0 (mod 2), so a*nn is even
    return a * nn // 2 + sum(i * x for i, x in enumerate(v))


def coordinate_bound(a: int, T: int) -> int:
    """Largest ``x >= 0`` with ``(a/2) x^2 - ((a-1)/2) x <= T``.

    With the linear weights centred (allowed because the coordinates sum to
    zero) every coordinate term is nonnegative, so no coordinate of a vector
    with ``Q_a <= T`` exceeds this in absolute value.
    """
    x = 0
    while a * (x + 1) ** 2 - (a - 1) * (x + 1) <= 2 * T:
        x += 1
    return x


@lru_cache(maxsize=64)
def _enumerate(a: int, T: int) -> tuple[np.ndarray, np.ndarray]:
    B = coordinate_bound(a, T)
    b = list(range(a))
    # suffix sums of b_i and b_i^2 over the still-free coordinates
    S1 = [sum(b[k:]) for k in range(a + 1)]
    S2 = [sum(x * x for x in b[k:]) for k in range(a + 1)]
    two_t = 2 * T
    vecs: list[tuple[int, ...]] = []
    vals: list[int] = []
    v = [0] * a

    def rec(k: int, s: int, q2: int) -> None:
        # q2 = 2 * (partial Q over coordinates < k), s = their sum
        if k == a - 1:
            x = -s
            if abs(x) > B:
                return
            val = q2 + a * x * x + 2 * b[k] * x
            if val <= two_t:
                v[k] = x
                vecs.append(tuple(v))
                vals.append(val // 2)
            return
        c = a - k - 1
        lim = 2 * a * c * T
        for x in range(-B, B + 1):
            q2x = q2 + a * x * x + 2 * b[k] * x
            target = -(s + x)
            # real minimum of the free coordinates' Q given their sum
            if a * c * q2x + (a * target + S1[k + 1]) ** 2 - c * S2[k + 1] > lim:
                continue
            v[k] = x
            rec(k + 1, s + x, q2x)

    rec(0, 0, 0)
    arr = np.array(vecs, dtype=np.int64).reshape(-1, a)
    q = np.array(vals, dtype=np.int64)
    arr.flags.writeable = False
    q.flags.writeable = False
    return arr, q


def enumerate_lattice(a: int, T: int) -> list[tuple[int, ...]]:
    """All zero-sum ``n`` in Z^a with ``Q_a(n) <= T``, lexicographically sorted."""
    if a < 1:
        raise ValueError("dimension must be positive")
    if T < 0:
        return []
    arr, _ = _enumerate(a, T)
    return [tuple(int(x) for x in row) for row in arr]


def klyachko_theta(t: int, order: int) -> UniSeries:
    """``sum q^Q_t(n)`` over the zero-sum lattice in Z^t."""
    if t < 1:
        raise ValueError("t must be positive")
    _, q = _enumerate(t, order)
    counts = np.bincount(q, minlength=order + 1) if len(q) else np.zeros(order + 1, int)
    return UniSeries([int(c) for c in counts[: order + 1]])


def theta_zfloor(a: int):
    """Lower bound on z-exponents in row n of any F_j (hence of C_a)."""
    return lambda n: -a * coordinate_bound(a, n)


def _component_exponents(a: int, j: int, arr: np.ndarray) -> np.ndarray:
    if j == 0:
        return -a * arr[:, a - 1]
    return a * arr[:, j] + j


def _bi_from_counts(rows: np.ndarray, zexps: np.ndarray, order: int, a: int) -> BiSeries:
    if len(rows) == 0:
        return BiSeries.one(order) * 0
    lo, hi = int(zexps.min()), int(zexps.max())
    dense = np.zeros((order + 1, hi - lo + 1), dtype=np.int64)
    np.add.at(dense, (rows, zexps - lo), 1)
    return BiSeries(dense.astype(object), lo, zfloor=theta_zfloor(a))


def f_component(a: int, j: int, order: int) -> BiSeries:
    """The component F_j of C_a, exact to q^order."""
    if a < 2:
        raise ValueError("a must be at least 2")
    if not 0 <= j < a:
        raise ValueError(f"j must lie in 0..{a - 1}")
    arr, q = _enumerate(a, order)
    return _bi_from_counts(q, _component_exponents(a, j, arr), order, a)


def c_series(a: int, order: int) -> BiSeries:
    """``C_a(z; q)``, the sum of all a components."""
    if a < 2:
        raise ValueError("a must be at least 2")
    arr, q = _enumerate(a, order)
    rows = np.concatenate([q] * a)
    zexps = np.concatenate([_component_exponents(a, j, arr) for j in range(a)])
    return _bi_from_counts(rows, zexps, order, a)


def r_factors(a: int) -> FactorList:
    """``E(q) E(q^a)^(a-2) [z^a; q^a]_inf / [z; q]_inf`` as a lazy product."""
    if a < 2:
        raise ValueError("a must be at least 2")
    fl = euler_tag(1, 1) * bracket(a, 0, a)
    if a > 2:
        fl = fl * euler_tag(a, a - 2)
    return fl / bracket(1, 0, 1)


def _c_order_for(a: int, r: int, M: int, order: int) -> int:
    """Smallest theta order whose z -> q^r, q -> q^M image is exact to ``order``."""
    zf = theta_zfloor(a)
    o = 0
    while True:
        horizon = 4 * (o + 1) + 64
        if min(M * n + r * zf(n) for n in range(o + 1, o + 1 + horizon)) - 1 >= order:
            return o
        o += 1


def d_specialized(a: int, r: int, M: int, order: int) -> UniSeries:
    """``D_a(q^r; q^M)`` where ``D_a = (E(q^a)^a / E(q)) C_a``, via the theta sum."""
    if r <= 0:
        raise ValueError("r must be positive")
    if M <= 0:
        raise ValueError("M must be positive")
    c = c_series(a, _c_order_for(a, r, M, order))
    csub = substitute_z(c, r, M, order=order)
    return csub * euler_series(a * M, order) ** a / euler_series(M, order)


def d_product(a: int, r: int, M: int, order: int) -> UniSeries:
    """The same specialization via ``E(q^a)^(2a-2) [z^a; q^a] / [z; q]``."""
    fl = euler_tag(a, 2 * a - 2) * bracket(a, 0, a) / bracket(1, 0, 1)
    return substitute_z(fl, r, M, order=order)


# reindexing maps behind the z -> zq functional equations


def reindex_cyclic(v: Sequence[int], j: int) -> tuple[int, ...]:
    """``(n_1, ..., n_{a-1}, n_0) + e_{j-1} - e_{a-1}``; Q grows by ``a n_j + j - sum(n)``."""
    a = len(v)
    w = list(v[1:]) + [v[0]]
    w[j - 1] += 1
    w[a - 1] -= 1
    return tuple(w)


def reindex_zero(v: Sequence[int]) -> tuple[int, ...]:
    """``(-n_{a-2}, ..., -n_0, -n_{a-1})``; Q grows by ``-a n_{a-1} - (a-2) sum(n)``."""
    a = len(v)
    return tuple(-v[a - 2 - k] for k in range(a - 1)) + (-v[a - 1],)


def reindex_one(v: Sequence[int]) -> tuple[int, ...]:
    """``(-n_0, -n_{a-1}, ..., -n_1) + e_0 - e_{a-1}``; Q grows by ``a n_1 + 1 - a sum(n)``."""
    a = len(v)
    w = [-v[0]] + [-v[a - k] for k in range(1, a)]
    w[0] += 1
    w[a - 1] -= 1
    return tuple(w)


def _q_any(a: int, v: Sequence[int]) -> Fraction:
    return Fraction(a * sum(x * x for x in v), 2) + sum(i * x for i, x in enumerate(v))


def qdiff_failures(a: int, vectors) -> list[tuple[str, tuple[int, ...]]]:
    """Vectors where one of the three Q-difference identities breaks."""
    bad = []
    for v in vectors:
        s = sum(v)
        q0 = _q_any(a, v)
        for j in range(1, a):
            if _q_any(a, reindex_cyclic(v, j)) - q0 != a * v[j] + j - s:
                bad.append((f"cyclic j={j}", tuple(v)))
        if _q_any(a, reindex_zero(v)) - q0 != -a * v[a - 1] - (a - 2) * s:
            bad.append(("zero", tuple(v)))
        if _q_any(a, reindex_one(v)) - q0 != a * v[1] + 1 - a * s:
            bad.append(("one", tuple(v)))
    return bad


def shift_source_order(a: int, order: int) -> int:
    """Theta order needed so that z -> zq keeps rows up to ``order`` exact."""
    zf = theta_zfloor(a)
    o = order
    while min(n + zf(n) for n in range(o + 1, 5 * (o + 1) + 64)) - 1 < order:
        o += 1
    return o
