"""t-cores: hook lengths, brute-force counts, and their generating function."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .products import euler_series
from .report import FAIL, PASS, VerificationReport
from .series import UniSeries

__all__ = [
    "partitions",
    "conjugate",
    "hook_lengths",
    "is_tcore",
    "count_tcores",
    "tcore_series",
    "positivity_scan",
]

MAX_BRUTE_N = 40


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def conjugate(parts: Sequence[int]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > j) for j in range(parts[0]))


def hook_lengths(parts: Sequence[int]) -> list[int]:
    """Hook length of every cell, row by row."""
    conj = conjugate(parts)
    return [parts[i] - j + conj[j] - i - 1
            for i in range(len(parts)) for j in range(parts[i])]


def is_tcore(parts: Sequence[int], t: int) -> bool:
    """No hook of length exactly t."""
    return t not in hook_lengths(parts)


@lru_cache(maxsize=None)
def count_tcores(t: int, n: int) -> int:
    if t < 1:
        raise ValueError("t must be positive")
    if not 0 <= n <= MAX_BRUTE_N:
        raise ValueError(f"brute-force count is limited to 0 <= n <= {MAX_BRUTE_N}")
    return sum(1 for lam in partitions(n) if is_tcore(lam, t))


def tcore_series(t: int, order: int) -> UniSeries:
    """``E(q^t)^t / E(q)``."""
    if t < 1:
        raise ValueError("t must be positive")
    return euler_series(t, order) ** t / euler_series(1, order)


def positivity_scan(tmin: int, tmax: int, order: int) -> VerificationReport:
    """Check a_t(n) >= 1 for every t in tmin..tmax and n <= order (needs t >= 4)."""
    if tmin < 4:
        raise ValueError("positivity of a_t(n) only holds for t >= 4 (a_3(3) = 0)")
    params = {"tmin": tmin, "tmax": tmax}
    for t in range(tmin, tmax + 1):
        s = tcore_series(t, order)
        for n, c in enumerate(s.coeffs):
            if c < 1:
                return VerificationReport("GO", FAIL, order, params,
                                          {"t": t, "n": n, "coeff": c})
    return VerificationReport("GO", PASS, order, params)
