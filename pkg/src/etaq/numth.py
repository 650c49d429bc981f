"""Elementary arithmetic functions: factorization, Moebius, Euler phi, divisors."""

from __future__ import annotations

from math import gcd

__all__ = [
    "factorize",
    "mobius",
    "euler_phi",
    "divisors",
    "coprime_residues_halved",
]


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ``[(p, e), ...]`` with ``p`` increasing.

    Trial division; inputs here are at most a few thousand.

    >>> factorize(12)
    [(2, 2), (3, 1)]
    >>> factorize(1)
    []
    """
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def coprime_residues_halved(M: int) -> list[int]:
    """Residues ``1 <= r <= (M-1)/2`` coprime to the odd modulus ``M``.

    Pairing ``r`` with ``M - r`` covers every reduced residue, so the result
    has ``euler_phi(M) // 2`` entries.
    """
    _check_positive(M)
    if M < 3 or M % 2 == 0:
        raise ValueError(f"M must be odd and >= 3, got {M}")
    return [r for r in range(1, (M - 1) // 2 + 1) if gcd(r, M) == 1]
