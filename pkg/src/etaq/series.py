"""Exact truncated series in q, and in (z, q) with Laurent rows in z.

All coefficients are Python ints.  Bivariate series store a dense
``(order + 1) x width`` grid of object dtype so that row and block operations
vectorize through numpy while staying arbitrary precision.

Products of q-Pochhammer type are described lazily by :class:`FactorList` and
expanded on demand.  Denominators ``1/(1 - z^e q^f)`` with ``f >= 1`` are
expanded as geometric series in ``z^e q^f``; a q^0 denominator ``1/(1 - z^e)``
must either cancel against a numerator (:func:`cancel_q0`) or be expanded in
nonnegative powers of ``z^e`` inside a finite z-window (:func:`expand_windowed`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Iterable, Iterator, Optional, Union

import numpy as np

from .report import FAIL, PASS, VerificationReport

__all__ = [
    "UniSeries",
    "LaurentPoly",
    "BiSeries",
    "Atom",
    "EulerTag",
    "FactorList",
    "pentagonal_euler",
    "uni_mul",
    "uni_recip",
    "uni_div",
    "bi_mul",
    "expand_factors",
    "expand_windowed",
    "expand_q",
    "cancel_q0",
    "substitute_z",
    "substitute_z_one",
    "reduce_mod_z_pow",
    "shift_z_to_zq",
    "nonneg_scan",
    "series_to_json",
    "series_from_json",
]


# --------------------------------------------------------------------------
# univariate
# --------------------------------------------------------------------------


class UniSeries:
    """Power series in q known exactly for q^0 .. q^order."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int], order: Optional[int] = None):
        c = [int(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            c = (c + [0] * (order + 1 - len(c)))[: order + 1]
        if not c:
            raise ValueError("a series needs at least the q^0 coefficient")
        self._c = tuple(c)

    @classmethod
    def one(cls, order: int) -> "UniSeries":
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> "UniSeries":
        return cls([0], order)

    @classmethod
    def from_terms(cls, terms: dict[int, int], order: int) -> "UniSeries":
        c = [0] * (order + 1)
        for n, v in terms.items():
            if 0 <= n <= order:
                c[n] += v
        return cls(c)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def __getitem__(self, n):
        return self._c[n]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self) -> Iterator[int]:
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        terms = [f"{c}*q^{n}" for n, c in enumerate(self._c) if c]
        return f"UniSeries({' + '.join(terms) or '0'} + O(q^{self.order + 1}))"

    def truncate(self, order: int) -> "UniSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return UniSeries(self._c[: order + 1])

    def __add__(self, other: "UniSeries") -> "UniSeries":
        o = min(self.order, other.order)
        return UniSeries([x + y for x, y in zip(self._c[: o + 1], other._c)])

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        o = min(self.order, other.order)
        return UniSeries([x - y for x, y in zip(self._c[: o + 1], other._c)])

    def __neg__(self) -> "UniSeries":
        return UniSeries([-x for x in self._c])

    def __mul__(self, other) -> "UniSeries":
        if isinstance(other, int):
            return UniSeries([other * x for x in self._c])
        return uni_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: "UniSeries") -> "UniSeries":
        return uni_div(self, other)

    def __pow__(self, k: int) -> "UniSeries":
        if k < 0:
            return uni_recip(self) ** (-k)
        result = UniSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def dilate(self, d: int, order: Optional[int] = None) -> "UniSeries":
        """Substitute q -> q^d, keeping coefficients up to ``order``.

        The result is exact up to ``d * (self.order + 1) - 1``.
        """
        if d < 1:
            raise ValueError("dilation factor must be positive")
        top = d * (self.order + 1) - 1
        order = top if order is None else order
        if order > top:
            raise ValueError(f"dilation by {d} only known to order {top}")
        c = [0] * (order + 1)
        for n, v in enumerate(self._c):
            if n * d > order:
                break
            c[n * d] = v
        return UniSeries(c)

    def nonzero(self) -> list[tuple[int, int]]:
        return [(n, c) for n, c in enumerate(self._c) if c]


def uni_mul(a: UniSeries, b: UniSeries) -> UniSeries:
    """Cauchy product truncated to ``min(a.order, b.order)``."""
    order = min(a.order, b.order)
    x, y = a.coeffs[: order + 1], b.coeffs[: order + 1]
    if sum(1 for v in x if v) > sum(1 for v in y if v):
        x, y = y, x
    out = [0] * (order + 1)
    for i, c in enumerate(x):
        if c:
            out[i:] = [o + c * v for o, v in zip(out[i:], y)]
    return UniSeries(out)


def uni_div(a: UniSeries, b: UniSeries) -> UniSeries:
    """``a / b`` for a divisor with constant term +1 or -1."""
    b0 = b[0]
    if b0 not in (1, -1):
        raise ValueError(f"divisor constant term must be a unit, got {b0}")
    order = min(a.order, b.order)
    tail = [(k, v) for k, v in enumerate(b.coeffs[1 : order + 1], start=1) if v]
    r = [0] * (order + 1)
    for n in range(order + 1):
        s = a[n]
        for k, v in tail:
            if k > n:
                break
            s -= v * r[n - k]
        r[n] = s * b0
    return UniSeries(r)


def uni_recip(a: UniSeries) -> UniSeries:
    return uni_div(UniSeries.one(a.order), a)


def pentagonal_euler(order: int) -> UniSeries:
    """``prod_{n>=1} (1 - q^n)`` via Euler's pentagonal number theorem."""
    c = [0] * (order + 1)
    c[0] = 1
    k = 1
    while True:
        p1 = k * (3 * k - 1) // 2
        if p1 > order:
            break
        sign = -1 if k % 2 else 1
        c[p1] += sign
        p2 = k * (3 * k + 1) // 2
        if p2 <= order:
            c[p2] += sign
        k += 1
    return UniSeries(c)


# --------------------------------------------------------------------------
# Laurent polynomials in z
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentPoly:
    """``sum coeffs[k] * z^(lo + k)``, normalized so the ends are nonzero."""

    lo: int = 0
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        end = len(c)
        while end > start and c[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", c[start:end])
        object.__setattr__(self, "lo", self.lo + start if end > start else 0)

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "LaurentPoly":
        terms = {i: c for i, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(i, 0) for i in range(lo, hi + 1)))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls(exp, (coeff,))

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> list[tuple[int, int]]:
        return [(self.lo + k, c) for k, c in enumerate(self.coeffs) if c]

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def __getitem__(self, i: int) -> int:
        k = i - self.lo
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = self.as_dict()
        for i, c in other.items():
            d[i] = d.get(i, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.lo, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.lo, tuple(other * c for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for k, c in enumerate(self.coeffs):
            if c:
                for l, d in enumerate(other.coeffs):
                    out[k + l] += c * d
        return LaurentPoly(self.lo + other.lo, tuple(out))

    __rmul__ = __mul__

    def at_one(self) -> int:
        return sum(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*z^{i}" for i, c in self.items())


# --------------------------------------------------------------------------
# bivariate
# --------------------------------------------------------------------------

ZFloor = Callable[[int], int]


def _zeros(rows: int, width: int) -> np.ndarray:
    g = np.empty((rows, width), dtype=object)
    g.fill(0)
    return g


def _shift_add(dst: np.ndarray, src: np.ndarray, e: int, coef: int = 1) -> None:
    """``dst[..., c + e] += coef * src[..., c]`` for columns that stay in range."""
    w = src.shape[-1]
    if abs(e) >= w:
        return
    if e >= 0:
        dst[..., e:] += coef * src[..., : w - e]
    else:
        dst[..., : w + e] += coef * src[..., -e:]


class BiSeries:
    """Series in q whose q^n coefficient is a Laurent polynomial in z.

    ``exact`` is False for windowed expansions, where only z-exponents inside
    ``window`` are stored (each exactly).  ``zfloor``, when known, bounds the
    lowest z-exponent of rows beyond ``order``; it is needed to decide how much
    of a substitution such as z -> zq is still exact.
    """

    __slots__ = ("order", "zlo", "grid", "exact", "window", "zfloor")

    def __init__(self, grid: np.ndarray, zlo: int, exact: bool = True,
                 window: Optional[tuple[int, int]] = None,
                 zfloor: Optional[ZFloor] = None):
        grid = np.asarray(grid, dtype=object)
        if grid.ndim != 2 or grid.shape[0] < 1:
            raise ValueError("grid must be 2-d with at least one row")
        if not exact and window is None:
            raise ValueError("a non-exact series must carry its window")
        self.order = grid.shape[0] - 1
        self.zlo = zlo
        self.grid = grid
        self.exact = exact
        self.window = window
        self.zfloor = zfloor
        self._trim()
        self.grid.flags.writeable = False

    def _trim(self) -> None:
        g = self.grid
        cols = np.nonzero(np.any(g != 0, axis=0))[0]
        if len(cols) == 0:
            self.grid = _zeros(g.shape[0], 1)
            self.zlo = 0
        elif cols[0] > 0 or cols[-1] < g.shape[1] - 1:
            self.grid = g[:, cols[0] : cols[-1] + 1].copy()
            self.zlo += int(cols[0])

    # constructors ---------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], int], order: int,
                   **kw) -> "BiSeries":
        """Build from ``{(n, i): coeff}`` meaning ``coeff * z^i q^n``."""
        keep = {k: v for k, v in terms.items() if v and 0 <= k[0] <= order}
        if not keep:
            return cls(_zeros(order + 1, 1), 0, **kw)
        lo = min(i for _, i in keep)
        hi = max(i for _, i in keep)
        g = _zeros(order + 1, hi - lo + 1)
        for (n, i), v in keep.items():
            g[n, i - lo] += v
        return cls(g, lo, **kw)

    @classmethod
    def from_rows(cls, rows: list[LaurentPoly], order: Optional[int] = None,
                  **kw) -> "BiSeries":
        order = len(rows) - 1 if order is None else order
        terms = {}
        for n, row in enumerate(rows):
            for i, c in row.items():
                terms[(n, i)] = c
        return cls.from_terms(terms, order, **kw)

    @classmethod
    def from_uni(cls, s: UniSeries) -> "BiSeries":
        g = _zeros(s.order + 1, 1)
        g[:, 0] = list(s.coeffs)
        return cls(g, 0)

    @classmethod
    def one(cls, order: int) -> "BiSeries":
        return cls.from_terms({(0, 0): 1}, order)

    @classmethod
    def monomial(cls, zexp: int, qexp: int, order: int, coeff: int = 1) -> "BiSeries":
        return cls.from_terms({(qexp, zexp): coeff}, order)

    # access ---------------------------------------------------------------

    @property
    def zhi(self) -> int:
        return self.zlo + self.grid.shape[1] - 1

    def row(self, n: int) -> LaurentPoly:
        return LaurentPoly(self.zlo, tuple(self.grid[n]))

    @property
    def rows(self) -> list[LaurentPoly]:
        return [self.row(n) for n in range(self.order + 1)]

    def coeff(self, n: int, i: int) -> int:
        k = i - self.zlo
        if 0 <= k < self.grid.shape[1]:
            return self.grid[n, k]
        return 0

    def terms(self) -> dict[tuple[int, int], int]:
        ns, ks = np.nonzero(self.grid != 0)
        return {(int(n), int(k) + self.zlo): self.grid[n, k] for n, k in zip(ns, ks)}

    def iter_terms(self) -> Iterator[tuple[int, int, int]]:
        """``(n, i, coeff)`` in lexicographic (n, i) order, nonzero only."""
        ns, ks = np.nonzero(self.grid != 0)
        for n, k in zip(ns, ks):
            yield int(n), int(k) + self.zlo, self.grid[n, k]

    def truncate(self, order: int) -> "BiSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return self._like(self.grid[: order + 1].copy(), self.zlo)

    def _like(self, grid, zlo, **kw) -> "BiSeries":
        opts = dict(exact=self.exact, window=self.window, zfloor=self.zfloor)
        opts.update(kw)
        return BiSeries(grid, zlo, **opts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.order == other.order and self.exact == other.exact
                and self.window == other.window and self.terms() == other.terms())

    def __repr__(self) -> str:
        kind = "exact" if self.exact else f"window={self.window}"
        return f"BiSeries(order={self.order}, z in [{self.zlo}, {self.zhi}], {kind})"

    # arithmetic -----------------------------------------------------------

    def _aligned(self, other: "BiSeries"):
        order = min(self.order, other.order)
        lo = min(self.zlo, other.zlo)
        hi = max(self.zhi, other.zhi)
        a = _zeros(order + 1, hi - lo + 1)
        b = _zeros(order + 1, hi - lo + 1)
        a[:, self.zlo - lo : self.zhi - lo + 1] = self.grid[: order + 1]
        b[:, other.zlo - lo : other.zhi - lo + 1] = other.grid[: order + 1]
        return a, b, lo

    def _combine_meta(self, other: "BiSeries"):
        exact = self.exact and other.exact
        window = _window_meet(self.window, other.window)
        return exact, window

    def __add__(self, other: "BiSeries") -> "BiSeries":
        a, b, lo = self._aligned(other)
        exact, window = self._combine_meta(other)
        return BiSeries(a + b, lo, exact=exact, window=window)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        a, b, lo = self._aligned(other)
        exact, window = self._combine_meta(other)
        return BiSeries(a - b, lo, exact=exact, window=window)

    def __neg__(self) -> "BiSeries":
        return self._like(-self.grid, self.zlo)

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, int):
            return self._like(other * self.grid, self.zlo)
        if isinstance(other, UniSeries):
            other = BiSeries.from_uni(other)
        return bi_mul(self, other)

    __rmul__ = __mul__

    def mul_z(self, k: int) -> "BiSeries":
        """Multiply by z^k."""
        window = None if self.window is None else (self.window[0] + k, self.window[1] + k)
        zf = None if self.zfloor is None else (lambda n, f=self.zfloor: f(n) + k)
        return BiSeries(self.grid.copy(), self.zlo + k, exact=self.exact,
                        window=window, zfloor=zf)


def _window_meet(w1, w2):
    if w1 is None:
        return w2
    if w2 is None:
        return w1
    lo, hi = max(w1[0], w2[0]), min(w1[1], w2[1])
    if lo > hi:
        raise ValueError(f"windows {w1} and {w2} do not overlap")
    return (lo, hi)


def bi_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    """Product of bivariate series, truncated to the smaller order."""
    order = min(a.order, b.order)
    if np.count_nonzero(a.grid[: order + 1] != 0) > np.count_nonzero(b.grid[: order + 1] != 0):
        a, b = b, a
    wb = b.grid.shape[1]
    out = _zeros(order + 1, a.grid.shape[1] + wb - 1)
    bg = b.grid[: order + 1]
    for n, k in zip(*np.nonzero(a.grid[: order + 1] != 0)):
        c = a.grid[n, k]
        out[n:, k : k + wb] += c * bg[: order + 1 - n]
    exact = a.exact and b.exact
    window = _window_meet(a.window, b.window)
    res = BiSeries(out, a.zlo + b.zlo, exact=True)
    if window is not None:
        res = _clip(res, window)
    return BiSeries(res.grid.copy(), res.zlo, exact=exact, window=window)


def _clip(b: BiSeries, window: tuple[int, int]) -> BiSeries:
    lo, hi = window
    g = _zeros(b.order + 1, hi - lo + 1)
    s, e = max(lo, b.zlo), min(hi, b.zhi)
    if s <= e:
        g[:, s - lo : e - lo + 1] = b.grid[:, s - b.zlo : e - b.zlo + 1]
    return BiSeries(g, lo, exact=False, window=window)


# --------------------------------------------------------------------------
# lazy products
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    """``prod_{k < count} (1 - sign * z^zexp * q^(qshift + qstep*k))``.

    ``count=None`` means the infinite product.
    """

    sign: int = 1
    zexp: int = 1
    qshift: int = 0
    qstep: int = 1
    count: Optional[int] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.qshift < 0:
            raise ValueError("qshift must be nonnegative")
        if self.qstep < 1:
            raise ValueError("qstep must be positive")
        if self.count is not None and self.count < 0:
            raise ValueError("count must be nonnegative")

    def qexps(self, order: int) -> Iterator[int]:
        """q-exponents of the factors whose q-degree does not exceed ``order``."""
        k = 0
        while self.count is None or k < self.count:
            f = self.qshift + self.qstep * k
            if f > order:
                return
            yield f
            k += 1

    @property
    def empty(self) -> bool:
        return self.count == 0

    def split_head(self) -> tuple["Atom", Optional["Atom"]]:
        """First factor, and the remaining product (None if nothing remains)."""
        head = Atom(self.sign, self.zexp, self.qshift, self.qstep, 1)
        rest_count = None if self.count is None else self.count - 1
        if rest_count == 0:
            return head, None
        return head, Atom(self.sign, self.zexp, self.qshift + self.qstep, self.qstep, rest_count)

    def shift_zq(self, s: int = 1) -> "Atom":
        """The atom after z -> z q^s."""
        f = self.qshift + s * self.zexp
        if f < 0:
            raise ValueError(f"z -> zq^{s} gives a negative q-power in {self}")
        return Atom(self.sign, self.zexp, f, self.qstep, self.count)


@dataclass(frozen=True)
class EulerTag:
    """``E(q^d)^power`` where ``E(q) = prod (1 - q^n)``."""

    d: int
    power: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("EulerTag needs d >= 1")


@dataclass(frozen=True)
class FactorList:
    """A product of atoms, Euler tags and explicit Laurent polynomials in z.

    ``num`` atoms multiply, ``den`` atoms divide; ``polys`` are q^0 numerator
    polynomials (cofactors left over by :func:`cancel_q0`, or monomials).
    """

    num: tuple[Atom, ...] = ()
    den: tuple[Atom, ...] = ()
    euler: tuple[EulerTag, ...] = ()
    polys: tuple[LaurentPoly, ...] = ()

    def __mul__(self, other: "FactorList") -> "FactorList":
        return FactorList(self.num + other.num, self.den + other.den,
                          _merge_euler(self.euler + other.euler),
                          self.polys + other.polys)

    def __truediv__(self, other: "FactorList") -> "FactorList":
        if other.polys:
            raise ValueError("cannot divide by an explicit polynomial")
        inv = tuple(EulerTag(t.d, -t.power) for t in other.euler)
        return FactorList(self.num + other.den, self.den + other.num,
                          _merge_euler(self.euler + inv), self.polys)

    def __pow__(self, k: int) -> "FactorList":
        if k < 0:
            return (FactorList() / self) ** (-k)
        out = FactorList()
        for _ in range(k):
            out = out * self
        return out

    def times_poly(self, p: LaurentPoly) -> "FactorList":
        return FactorList(self.num, self.den, self.euler, self.polys + (p,))

    def numerator(self) -> "FactorList":
        return FactorList(num=self.num, euler=tuple(t for t in self.euler if t.power > 0),
                          polys=self.polys)

    def denominator(self) -> "FactorList":
        return FactorList(num=self.den,
                          euler=tuple(EulerTag(t.d, -t.power) for t in self.euler if t.power < 0))

    def shift_zq(self, s: int = 1) -> "FactorList":
        """Apply z -> z q^s atom by atom (polynomials must be constant in z)."""
        if any(p.lo != 0 or p.hi != 0 for p in self.polys if not p.is_zero()):
            raise ValueError("shift_zq of a FactorList with z-polynomials is not supported")
        return FactorList(tuple(a.shift_zq(s) for a in self.num),
                          tuple(a.shift_zq(s) for a in self.den), self.euler, self.polys)

    def q0_denominators(self) -> list[Atom]:
        return [a for a in self.den if a.qshift == 0 and not a.empty]


def _merge_euler(tags) -> tuple[EulerTag, ...]:
    acc: dict[int, int] = {}
    for t in tags:
        acc[t.d] = acc.get(t.d, 0) + t.power
    return tuple(EulerTag(d, p) for d, p in sorted(acc.items()) if p)


def _geometric_cofactor(sign: int, e: int, k: int) -> LaurentPoly:
    # (1 - s^k z^{ke}) / (1 - s z^e) = sum_{j<k} s^j z^{je}
    return LaurentPoly.from_dict({j * e: sign**j for j in range(k)})


def _cancel(fl: FactorList, strict: bool) -> tuple[FactorList, list[Atom]]:
    num = [a for a in fl.num if not a.empty]
    polys = list(fl.polys)
    den_out: list[Atom] = []
    poles: list[Atom] = []
    pending = [a for a in fl.den if not a.empty]
    while pending:
        atom = pending.pop(0)
        if atom.qshift != 0:
            den_out.append(atom)
            continue
        head, rest = atom.split_head()
        if rest is not None:
            pending.insert(0, rest)
        if head.zexp == 0:
            raise ZeroDivisionError(f"denominator factor (1 - {head.sign}) at q^0")
        e, s = head.zexp, head.sign
        for idx, cand in enumerate(num):
            if cand.qshift != 0 or cand.zexp == 0 or cand.zexp % e:
                continue
            k = cand.zexp // e
            if k < 1 or cand.sign != s**k:
                continue
            _, cand_rest = cand.split_head()
            if cand_rest is None:
                num.pop(idx)
            else:
                num[idx] = cand_rest
            if k > 1:
                polys.append(_geometric_cofactor(s, e, k))
            break
        else:
            if strict:
                raise ValueError(
                    f"non-cancellable q^0 denominator (1 - {'' if s == 1 else '-'}z^{e}); "
                    "use expand_windowed")
            poles.append(head)
    return FactorList(tuple(num), tuple(den_out), fl.euler, tuple(polys)), poles


def cancel_q0(numerator: FactorList, denominator: Optional[FactorList] = None) -> FactorList:
    """Divide every q^0 denominator factor ``(1 - z^e)`` into a numerator one.

    ``(1 - z^{ke}) / (1 - z^e)`` leaves the polynomial cofactor
    ``1 + z^e + ... + z^{(k-1)e}`` in ``polys``.  Raises ValueError when some
    q^0 denominator has no numerator partner.
    """
    fl = numerator if denominator is None else numerator / denominator
    return _cancel(fl, strict=True)[0]


def _reach(fl: FactorList, order: int) -> tuple[int, int]:
    """Bounds (neg, pos) on |z-exponent| of any partial product at q-degree <= order.

    Poles at q^0 are excluded; they are handled by the caller.
    """
    neg = pos = 0
    for p in fl.polys:
        if not p.is_zero():
            neg += max(0, -p.lo)
            pos += max(0, p.hi)
    slope_neg = slope_pos = Fraction(0)
    for atom, in_den in [(a, False) for a in fl.num] + [(a, True) for a in fl.den]:
        e = atom.zexp
        for f in atom.qexps(order):
            if f == 0:
                if not in_den:
                    neg += max(0, -e)
                    pos += max(0, e)
                continue
            if e < 0:
                slope_neg = max(slope_neg, Fraction(-e, f))
            elif e > 0:
                slope_pos = max(slope_pos, Fraction(e, f))
            # later factors of the same atom have larger f, hence smaller slope
            break
    return neg + floor(slope_neg * order), pos + floor(slope_pos * order)


def _apply_num(g: np.ndarray, sign: int, e: int, f: int) -> None:
    order = g.shape[0] - 1
    if f == 0:
        src = g.copy()
        _shift_add(g, src, e, -sign)
    elif f <= order:
        src = g[: order + 1 - f].copy()
        _shift_add(g[f:], src, e, -sign)


def _apply_den(g: np.ndarray, sign: int, e: int, f: int) -> None:
    order = g.shape[0] - 1
    # g <- g / (1 - sign z^e q^f), block recurrence over rows
    for start in range(f, order + 1, f):
        stop = min(start + f, order + 1)
        _shift_add(g[start:stop], g[start - f : stop - f], e, sign)


def _apply_pole(g: np.ndarray, sign: int, e: int) -> None:
    w = g.shape[1]
    for start in range(e, w, e):
        stop = min(start + e, w)
        g[:, start:stop] += sign * g[:, start - e : stop - e]


def _apply_uni(g: np.ndarray, s: UniSeries) -> np.ndarray:
    order = g.shape[0] - 1
    out = _zeros(*g.shape)
    for k, c in s.nonzero():
        if k > order:
            break
        out[k:] += c * g[: order + 1 - k]
    return out


def _divide_uni(g: np.ndarray, s: UniSeries) -> None:
    order = g.shape[0] - 1
    if s[0] != 1:
        raise ValueError("expected a divisor with constant term 1")
    tail = [(k, c) for k, c in s.nonzero() if 0 < k <= order]
    for n in range(1, order + 1):
        for k, c in tail:
            if k > n:
                break
            g[n] -= c * g[n - k]


def _euler_power(d: int, p: int, order: int) -> UniSeries:
    base = pentagonal_euler(order // d).dilate(d, order)
    return base ** p


def _expand(fl: FactorList, order: int, window: Optional[tuple[int, int]]) -> BiSeries:
    if order < 0:
        raise ValueError("order must be nonnegative")
    if window is None:
        fl, poles = _cancel(fl, strict=False)
        if poles:
            raise ValueError("division by a q^0 z-factor: cancel it with cancel_q0 "
                             "or use expand_windowed")
    else:
        zmin, zmax = window
        if zmin > zmax:
            raise ValueError(f"empty window {window}")
        fl, poles = _cancel(fl, strict=False)
        for pole in poles:
            if pole.zexp <= 0:
                raise ValueError("windowed expansion supports q^0 poles (1 - z^e) with e > 0 only")
    neg, pos = _reach(fl, order)
    if window is None:
        lo, hi = -neg, pos
    else:
        lo, hi = min(-neg, window[0]), window[1] + neg
    g = _zeros(order + 1, hi - lo + 1)
    if lo <= 0 <= hi:
        g[0, -lo] = 1
    for p in fl.polys:
        out = _zeros(*g.shape)
        for i, c in p.items():
            _shift_add(out, g, i, c)
        g = out
    for atom in fl.num:
        for f in atom.qexps(order):
            _apply_num(g, atom.sign, atom.zexp, f)
    for tag in fl.euler:
        if tag.power > 0:
            g = _apply_uni(g, _euler_power(tag.d, tag.power, order))
        else:
            _divide_uni(g, _euler_power(tag.d, -tag.power, order))
    for atom in fl.den:
        for f in atom.qexps(order):
            _apply_den(g, atom.sign, atom.zexp, f)
    for pole in poles:
        _apply_pole(g, pole.sign, pole.zexp)
    res = BiSeries(g, lo)
    if window is not None:
        return _clip(res, window)
    return res


def expand_factors(f: FactorList, order: int) -> BiSeries:
    """Exact expansion of a product whose q^0 denominators all cancel."""
    return _expand(f, order, None)


def expand_windowed(f: FactorList, order: int, window: tuple[int, int]) -> BiSeries:
    """Expansion exact for z-exponents in ``window``; q^0 poles ``1/(1 - z^e)``
    are expanded in nonnegative powers of ``z^e``."""
    return _expand(f, order, tuple(window))


# --------------------------------------------------------------------------
# substitutions and reductions
# --------------------------------------------------------------------------


def _expand_uni(fl: FactorList, order: int) -> UniSeries:
    """Expansion of a z-free product (all atoms have zexp 0, polys constant)."""
    c = [0] * (order + 1)
    c[0] = 1
    s = UniSeries(c)
    for p in fl.polys:
        s = s * p[0]
    for tag in fl.euler:
        s = s * _euler_power(tag.d, tag.power, order) if tag.power > 0 \
            else s / _euler_power(tag.d, -tag.power, order)
    c = list(s.coeffs)
    for atom in fl.num:
        for f in atom.qexps(order):
            if f == 0:
                c = [(1 - atom.sign) * x for x in c]
            else:
                old = c[: order + 1 - f]
                for n in range(f, order + 1):
                    c[n] -= atom.sign * old[n - f]
    for atom in fl.den:
        for f in atom.qexps(order):
            if f == 0:
                raise ZeroDivisionError("q^0 denominator after substitution")
            for n in range(f, order + 1):
                c[n] += atom.sign * c[n - f]
    return UniSeries(c)


def expand_q(fl: FactorList, order: int) -> UniSeries:
    """Expand a product that does not involve z."""
    if any(a.zexp for a in fl.num + fl.den):
        raise ValueError("expand_q needs z-free atoms")
    if any(not p.is_zero() and (p.lo != 0 or p.hi != 0) for p in fl.polys):
        raise ValueError("expand_q needs constant polynomials")
    return _expand_uni(FactorList(fl.num, fl.den, fl.euler,
                                  tuple(LaurentPoly.monomial(0, p[0]) for p in fl.polys)),
                       order)


def _substitute_factors(fl: FactorList, r: int, m: int, order: int) -> UniSeries:
    def sub(atom: Atom, in_den: bool) -> Atom:
        f = atom.zexp * r + atom.qshift * m
        if f < 0 or (f == 0 and in_den):
            raise ValueError(f"z -> q^{r} sends {atom} to a non-power-series factor")
        return Atom(atom.sign, 0, f, atom.qstep * m, atom.count)

    polys = []
    for p in fl.polys:
        if not p.is_zero() and p.lo < 0:
            raise ValueError("negative z-power in a polynomial factor")
        polys.append(UniSeries.from_terms({i * r: c for i, c in p.items()}, order))
    base = FactorList(tuple(sub(a, False) for a in fl.num),
                      tuple(sub(a, True) for a in fl.den),
                      tuple(EulerTag(t.d * m, t.power) for t in fl.euler))
    s = _expand_uni(base, order)
    for ps in polys:
        s = s * ps
    return s


def _tail_order(b: BiSeries, weight: Callable[[int], int], horizon: int) -> int:
    """Largest order N such that no row beyond ``b.order`` reaches q^N."""
    lowest = min(weight(n) for n in range(b.order + 1, b.order + 1 + horizon))
    return lowest - 1


def substitute_z(b: Union[BiSeries, FactorList], r: int, m: int = 1,
                 order: Optional[int] = None, zfloor: Optional[ZFloor] = None) -> UniSeries:
    """Specialize ``z -> q^r, q -> q^m``.

    For a :class:`FactorList` the substitution is made factor by factor and
    ``order`` is required.  For a :class:`BiSeries` the result order is the
    largest one that unseen rows cannot reach; rows beyond ``b.order`` are
    bounded below in z by ``zfloor`` (falling back to ``b.zfloor``, then to 0).
    """
    if r <= 0:
        raise ValueError("r must be positive (z = 1 would hit a pole)")
    if m <= 0:
        raise ValueError("m must be positive")
    if isinstance(b, FactorList):
        if order is None:
            raise ValueError("order is required when substituting into a FactorList")
        return _substitute_factors(b, r, m, order)
    if not b.exact:
        raise ValueError("substitute_z needs an exact series")
    zf = zfloor or b.zfloor or (lambda n: 0)
    valid = _tail_order(b, lambda n: n * m + r * zf(n), horizon=4 * (b.order + 1) + 64)
    if order is not None:
        if order > valid:
            raise ValueError(f"substitution only exact to order {valid}")
        valid = order
    if valid < 0:
        raise ValueError("substitution leaves no exact coefficients")
    out = [0] * (valid + 1)
    for n, i, c in b.iter_terms():
        e = n * m + i * r
        if e < 0:
            raise ValueError(f"term z^{i} q^{n} maps to a negative power of q")
        if e <= valid:
            out[e] += c
    return UniSeries(out)


def substitute_z_one(b: BiSeries) -> UniSeries:
    """Set z = 1: each row is summed over its z-exponents."""
    if not b.exact:
        raise ValueError("substitute_z_one needs an exact series")
    return UniSeries([sum(row) for row in b.grid.tolist()])


def reduce_mod_z_pow(b: BiSeries, a: int) -> BiSeries:
    """Fold z-exponents into 0..a-1 (the image modulo z^a - 1)."""
    if a < 1:
        raise ValueError("modulus must be positive")
    g = _zeros(b.order + 1, a)
    for k in range(b.grid.shape[1]):
        g[:, (b.zlo + k) % a] += b.grid[:, k]
    out = BiSeries(g, 0, exact=b.exact, window=b.window)
    return out


def shift_z_to_zq(b: BiSeries, zfloor: Optional[ZFloor] = None) -> BiSeries:
    """Substitute z -> zq: the term z^i q^n moves to z^i q^(n+i).

    Terms of rows beyond ``b.order`` with negative z-exponent move down, so the
    result is truncated to the order they cannot reach (see ``zfloor``).
    """
    if not b.exact:
        raise ValueError("shift_z_to_zq needs an exact series")
    zf = zfloor or b.zfloor or (lambda n: 0)
    valid = min(b.order, _tail_order(b, lambda n: n + zf(n), horizon=4 * (b.order + 1) + 64))
    if valid < 0:
        raise ValueError("shift leaves no exact coefficients")
    terms = {}
    for n, i, c in b.iter_terms():
        if n + i < 0:
            raise ValueError(f"term z^{i} q^{n} maps to a negative power of q")
        if n + i <= valid:
            terms[(n + i, i)] = c
    return BiSeries.from_terms(terms, valid)


def nonneg_scan(s: Union[UniSeries, BiSeries], id: str = "nonneg") -> VerificationReport:
    """Pass iff every stored coefficient is >= 0; else report the first negative."""
    if isinstance(s, UniSeries):
        for n, c in enumerate(s.coeffs):
            if c < 0:
                return VerificationReport(id, FAIL, s.order, first_discrepancy={"n": n, "coeff": c})
        return VerificationReport(id, PASS, s.order)
    neg = np.nonzero(s.grid < 0)
    if len(neg[0]):
        n, k = int(neg[0][0]), int(neg[1][0])
        return VerificationReport(id, FAIL, s.order, first_discrepancy={
            "n": n, "i": k + s.zlo, "coeff": s.grid[n, k]})
    return VerificationReport(id, PASS, s.order)


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def series_to_json(s: Union[UniSeries, BiSeries]) -> str:
    """``{"order": n, "rows": [{"q": n, "zlo": i, "coeffs": ["..."]}]}``.

    A univariate series is written with one coefficient per row at zlo 0.
    Zero rows are omitted.
    """
    rows = []
    if isinstance(s, UniSeries):
        for n, c in enumerate(s.coeffs):
            if c:
                rows.append({"q": n, "zlo": 0, "coeffs": [str(c)]})
        doc = {"order": s.order, "rows": rows}
    else:
        for n in range(s.order + 1):
            row = s.row(n)
            if not row.is_zero():
                rows.append({"q": n, "zlo": row.lo, "coeffs": [str(c) for c in row.coeffs]})
        doc = {"order": s.order, "rows": rows}
        if not s.exact:
            doc["window"] = list(s.window)
    return json.dumps(doc)


def series_from_json(text: str, univariate: bool = False) -> Union[UniSeries, BiSeries]:
    doc = json.loads(text)
    order = doc["order"]
    if univariate:
        c = [0] * (order + 1)
        for row in doc["rows"]:
            if row["zlo"] != 0 or len(row["coeffs"]) != 1:
                raise ValueError("row is not univariate")
            c[row["q"]] = int(row["coeffs"][0])
        return UniSeries(c)
    terms = {}
    for row in doc["rows"]:
        for k, v in enumerate(row["coeffs"]):
            terms[(row["q"], row["zlo"] + k)] = int(v)
    if "window" in doc:
        return BiSeries.from_terms(terms, order, exact=False, window=tuple(doc["window"]))
    return BiSeries.from_terms(terms, order)
