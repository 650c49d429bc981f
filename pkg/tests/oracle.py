"""Slow, independent reference arithmetic on dicts, used only by the tests.

Bivariate truncated series are ``{(n, i): c}`` meaning ``c q^n z^i``; nothing
here touches the package.
"""

from itertools import product as cartesian


def mul(a, b, order):
    out = {}
    for (n1, i1), c1 in a.items():
        for (n2, i2), c2 in b.items():
            n = n1 + n2
            if n <= order:
                k = (n, i1 + i2)
                out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def one():
    return {(0, 0): 1}


def pochhammer(e, f, m, order, count=None, sign=1):
    """prod_k (1 - sign z^e q^(f + m k)), infinite unless count is given."""
    acc = one()
    k = 0
    while count is None or k < count:
        qexp = f + m * k
        if qexp > order:
            break
        acc = mul(acc, {(0, 0): 1, (qexp, e): -sign}, order)
        k += 1
    return acc


def pochhammer_inv(e, f, m, order, count=None):
    """prod_k 1/(1 - z^e q^(f + m k)); needs f > 0."""
    assert f > 0
    acc = one()
    k = 0
    while count is None or k < count:
        qexp = f + m * k
        if qexp > order:
            break
        geo = {(j * qexp, j * e): 1 for j in range(order // qexp + 1)}
        acc = mul(acc, geo, order)
        k += 1
    return acc


def euler(d, order):
    return pochhammer(0, d, d, order)


def bracket(e, f, m, order):
    return mul(pochhammer(e, f, m, order), pochhammer(-e, m - f, m, order), order)


def power(a, k, order):
    acc = one()
    for _ in range(k):
        acc = mul(acc, a, order)
    return acc


def uni(a, order):
    """Collapse a z-free dict to a coefficient list."""
    out = [0] * (order + 1)
    for (n, i), c in a.items():
        assert i == 0
        out[n] += c
    return out


def partitions_count(order):
    inv = pochhammer_inv(0, 1, 1, order)
    return uni(inv, order)


def lattice_sum(t, order, weight):
    """sum over zero-sum n in Z^t with |n_k| <= B of weight(n) placed at q^Q(n).

    ``weight`` returns a z-exponent; plain box enumeration, no pruning.
    """
    B = 1
    while t * B * B - (t - 1) * B <= 2 * order:
        B += 1
    out = {}
    for v in cartesian(range(-B, B + 1), repeat=t - 1):
        full = v + (-sum(v),)
        q2 = t * sum(x * x for x in full) + 2 * sum(k * x for k, x in enumerate(full))
        if q2 <= 2 * order:
            for zexp in weight(full):
                key = (q2 // 2, zexp)
                out[key] = out.get(key, 0) + 1
    return out


def crank(parts):
    ones = parts.count(1)
    if ones == 0:
        return max(parts) if parts else 0
    return sum(1 for p in parts if p > ones) - ones


def all_partitions(n):
    def gen(n, top):
        if n == 0:
            yield []
            return
        for k in range(min(n, top), 0, -1):
            for rest in gen(n - k, k):
                yield [k] + rest
    return list(gen(n, n))
