"""Classical products: Euler products, eta quotients, Pochhammer symbols, brackets."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .series import (
    Atom,
    EulerTag,
    FactorList,
    UniSeries,
    pentagonal_euler,
    uni_div,
)

__all__ = [
    "EtaQuotientSpec",
    "EtaExpansion",
    "euler_series",
    "eta_quotient",
    "bracket",
    "pochhammer",
    "finite_pochhammer",
    "euler_tag",
    "gaussian_poly",
    "q_pochhammer_series",
]


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prod_k eta(k tau)^e(k)``, stored as sorted ``(k, e)`` pairs with e != 0."""

    terms: tuple[tuple[int, int], ...]

    def __init__(self, terms: Mapping[int, int] | tuple = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, e in items:
            if k < 1:
                raise ValueError(f"eta argument must be a positive integer, got {k}")
            acc[k] = acc.get(k, 0) + e
        clean = tuple(sorted((k, e) for k, e in acc.items() if e))
        if not clean:
            raise ValueError("an eta quotient needs at least one nonzero exponent")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def parse(cls, text: str) -> "EtaQuotientSpec":
        """Parse ``"5^5 * 1^-1"``; a bare ``k`` means exponent 1."""
        pairs = []
        for tok in text.split("*"):
            tok = tok.strip()
            m = re.fullmatch(r"(\d+)\s*(?:\^\s*\(?\s*([+-]?\d+)\s*\)?)?", tok)
            if not m:
                raise ValueError(f"bad eta term {tok!r}; expected k^e")
            pairs.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls(tuple(pairs))

    def __mul__(self, other: "EtaQuotientSpec") -> "EtaQuotientSpec":
        return EtaQuotientSpec(self.terms + other.terms)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __str__(self) -> str:
        return " * ".join(f"{k}^{e}" for k, e in self.terms)


@dataclass(frozen=True)
class EtaExpansion:
    """``q^prefactor * series``; the prefactor stays an exact rational."""

    prefactor: Fraction
    series: UniSeries

    @property
    def prefactor_num(self) -> int:
        return self.prefactor.numerator

    @property
    def prefactor_den(self) -> int:
        return self.prefactor.denominator


def euler_series(d: int, order: int) -> UniSeries:
    """``E(q^d)`` to ``order``, from the pentagonal expansion of ``E``."""
    if d < 1:
        raise ValueError("d must be positive")
    return pentagonal_euler(order // d).dilate(d, order)


def eta_quotient(spec: EtaQuotientSpec, order: int) -> EtaExpansion:
    """Expand an eta quotient as ``q^(sum k e(k) / 24) * prod_k E(q^k)^e(k)``."""
    num = UniSeries.one(order)
    den = UniSeries.one(order)
    for k, e in spec.terms:
        base = euler_series(k, order)
        if e > 0:
            num = num * base ** e
        else:
            den = den * base ** (-e)
    series = num if den == UniSeries.one(order) else uni_div(num, den)
    prefactor = Fraction(sum(k * e for k, e in spec.terms), 24)
    return EtaExpansion(prefactor, series)


def bracket(e: int, f: int, m: int) -> FactorList:
    """``[z^e q^f; q^m]_inf = (z^e q^f; q^m)_inf (z^-e q^(m-f); q^m)_inf``."""
    if m < 1:
        raise ValueError("step m must be positive")
    if not 0 <= f < m:
        raise ValueError(f"need 0 <= f < m, got f={f}, m={m}; reduce f modulo m "
                         "(the bracket only changes by a monomial factor)")
    return FactorList(num=(Atom(1, e, f, m), Atom(1, -e, m - f, m)))


def pochhammer(e: int, f: int, m: int) -> FactorList:
    """``(z^e q^f; q^m)_inf`` as a one-atom factor list."""
    return FactorList(num=(Atom(1, e, f, m),))


def finite_pochhammer(e: int, f: int, m: int, n: int) -> FactorList:
    """``(z^e q^f; q^m)_n``."""
    return FactorList(num=(Atom(1, e, f, m, n),))


def euler_tag(d: int, power: int = 1) -> FactorList:
    return FactorList(euler=(EulerTag(d, power),))


def q_pochhammer_series(start: int, step: int, count: int | None, order: int) -> UniSeries:
    """``prod_{k<count} (1 - q^(start + step*k))`` as a univariate series."""
    c = [0] * (order + 1)
    c[0] = 1
    k = 0
    while count is None or k < count:
        f = start + step * k
        if f > order:
            break
        if f == 0:
            c = [0] * (order + 1)
            break
        for n in range(order, f - 1, -1):
            c[n] -= c[n - f]
        k += 1
    return UniSeries(c)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic in the constant term)."""
    num = list(num)
    if den[0] not in (1, -1):
        raise ValueError("divisor must have unit constant term")
    qdeg = len(num) - len(den)
    if qdeg < 0:
        if any(num):
            raise ArithmeticError("division leaves a remainder")
        return [0]
    quot = [0] * (qdeg + 1)
    # long division from the low end
    for i in range(qdeg + 1):
        c = num[i] * den[0]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("Gaussian polynomial division left a remainder")
    return quot


def gaussian_poly(n: int, m: int) -> UniSeries:
    """Coefficients of the q-binomial ``[n+m choose m]_q``.

    Computed as ``(1-q^(n+1))...(1-q^(n+m)) / (q)_m`` by exact polynomial
    division; a nonzero remainder raises ArithmeticError.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    deg = n * m
    top = [1]
    for k in range(n + 1, n + m + 1):
        top = _poly_mul_binomial(top, k)
    bottom = [1]
    for k in range(1, m + 1):
        bottom = _poly_mul_binomial(bottom, k)
    quot = _poly_divexact(top, bottom)
    quot = (quot + [0] * (deg + 1))[: deg + 1]
    return UniSeries(quot)


def _poly_mul_binomial(p: list[int], k: int) -> list[int]:
    out = p + [0] * k
    for i, c in enumerate(p):
        out[i + k] -= c
    return out
