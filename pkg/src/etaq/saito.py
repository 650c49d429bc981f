"""The eta products S_N and their decomposition into theta-specializations.

    S_N(q) = E(q^N)^phi(N) / prod_{d | N} E(q^d)^mu(d)

with the eta-form prefactor ``q^((N phi(N) - sum_{d|N} d mu(d)) / 24)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Optional

from .numth import coprime_residues_halved, divisors, euler_phi, factorize, mobius
from .products import bracket, euler_series
from .report import FAIL, PASS, VerificationReport
from .series import UniSeries, nonneg_scan, substitute_z
from .theta import d_product, d_specialized

__all__ = [
    "PrimePower",
    "CaseTwo",
    "CaseThree",
    "NonnegReport",
    "saito_prefactor",
    "saito_series",
    "mobius_product",
    "coprime_product",
    "bracket_regrouping",
    "case2_product",
    "classify",
    "verify_case2",
    "verify_case3",
    "nonneg_report",
]


@dataclass(frozen=True)
class PrimePower:
    p: int
    alpha: int


@dataclass(frozen=True)
class CaseTwo:
    p: int
    M: int


@dataclass(frozen=True)
class CaseThree:
    p: int
    alpha: int
    M: int
    Nprime: int


@dataclass
class NonnegReport:
    N: int
    order: int
    prefactor: Fraction
    passed: bool
    first_negative: Optional[tuple[int, int]] = None

    def to_dict(self) -> dict:
        fn = None
        if self.first_negative is not None:
            fn = {"n": self.first_negative[0], "coeff": str(self.first_negative[1])}
        return {
            "N": self.N,
            "order": self.order,
            "prefactor": f"{self.prefactor.numerator}/{self.prefactor.denominator}",
            "pass": self.passed,
            "firstNegative": fn,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@lru_cache(maxsize=256)
def _euler_power(d: int, power: int, order: int) -> UniSeries:
    return euler_series(d, order) ** power


def _euler_product(powers: dict[int, int], order: int) -> UniSeries:
    """``prod_d E(q^d)^powers[d]``: numerator first, then one exact division."""
    num = UniSeries.one(order)
    den = UniSeries.one(order)
    for d, e in sorted(powers.items()):
        if e > 0:
            num = num * _euler_power(d, e, order)
        elif e < 0:
            den = den * _euler_power(d, -e, order)
    return num / den


def saito_prefactor(N: int) -> Fraction:
    return Fraction(N * euler_phi(N) - sum(d * mobius(d) for d in divisors(N)), 24)


def saito_series(N: int, order: int) -> tuple[Fraction, UniSeries]:
    """``(prefactor, S_N(q))`` truncated at ``order``."""
    if N < 1:
        raise ValueError("N must be positive")
    powers = {N: euler_phi(N)}
    for d in divisors(N):
        mu = mobius(d)
        if mu:
            powers[d] = powers.get(d, 0) - mu
    return saito_prefactor(N), _euler_product(powers, order)


def mobius_product(M: int, order: int) -> UniSeries:
    """``prod_{d | M} E(q^d)^mu(d)`` from Euler products."""
    if M < 1:
        raise ValueError("M must be positive")
    return _euler_product({d: mobius(d) for d in divisors(M) if mobius(d)}, order)


def coprime_product(M: int, order: int) -> UniSeries:
    """``prod_{n >= 1, gcd(n, M) = 1} (1 - q^n)``, factor by factor."""
    c = [0] * (order + 1)
    c[0] = 1
    for n in range(1, order + 1):
        if gcd(n, M) == 1:
            for k in range(order, n - 1, -1):
                c[k] -= c[k - n]
    return UniSeries(c)


def bracket_regrouping(M: int, order: int) -> UniSeries:
    """``prod_r [q^r; q^M]_inf`` over r in :func:`coprime_residues_halved`."""
    out = UniSeries.one(order)
    for r in coprime_residues_halved(M):
        out = out * substitute_z(bracket(1, 0, 1), r, M, order=order)
    return out


def classify(N: int):
    """Split N for the three-case argument: p = 2 if N is even, else its least prime."""
    if N < 2:
        raise ValueError("classify needs N >= 2")
    fac = factorize(N)
    p, alpha = fac[0]
    M = N // p**alpha
    if M == 1:
        return PrimePower(p, alpha)
    if alpha == 1:
        return CaseTwo(p, M)
    return CaseThree(p, alpha, M, p * M)


def _compare(id: str, lhs: UniSeries, rhs: UniSeries, params: dict) -> VerificationReport:
    order = min(lhs.order, rhs.order)
    for n in range(order + 1):
        if lhs[n] != rhs[n]:
            return VerificationReport(id, FAIL, order, params,
                                      {"n": n, "lhs": lhs[n], "rhs": rhs[n]})
    return VerificationReport(id, PASS, order, params)


def case2_product(p: int, M: int, order: int, route: str = "theta") -> UniSeries:
    """``prod_r D_p(q^r; q^M)`` over the halved coprime residues of M."""
    make = d_specialized if route == "theta" else d_product
    return prod((make(p, r, M, order) for r in coprime_residues_halved(M)),
                start=UniSeries.one(order))


def verify_case2(N: int, order: int) -> VerificationReport:
    """Check ``prod_r D_p(q^r; q^M) = S_N`` with D built from the theta sum."""
    case = classify(N)
    if not isinstance(case, CaseTwo):
        raise ValueError(f"N={N} is not of the form p*M with M odd, p prime, p not dividing M")
    params = {"N": N, "p": case.p, "M": case.M}
    lhs = case2_product(case.p, case.M, order)
    _, rhs = saito_series(N, order)
    return _compare("DPROD", lhs, rhs, params)


def _case3_with_prime(N: int, p: int) -> CaseThree:
    alpha, M = 0, N
    while M % p == 0:
        M //= p
        alpha += 1
    if alpha < 2 or M == 1:
        raise ValueError(f"N={N} is not p^alpha*M with alpha >= 2, M > 1 for p={p}")
    return CaseThree(p, alpha, M, p * M)


def verify_case3(N: int, order: int, p: Optional[int] = None) -> VerificationReport:
    """Check ``S_N = (E(q^(p^(a-1) N'))^(p^(a-1)) / E(q^N'))^((p-1) phi(M)) S_N'``.

    Also checks that the Moebius products over the divisors of N and N' agree.
    By default the prime comes from :func:`classify`; passing ``p`` picks
    another prime with ``p^2 | N`` (the identity does not need M odd).
    """
    if p is not None:
        if factorize(p) != [(p, 1)]:
            raise ValueError(f"{p} is not prime")
        case = _case3_with_prime(N, p)
    else:
        case = classify(N)
    if not isinstance(case, CaseThree):
        raise ValueError(f"N={N} is not of the form p^alpha*M with alpha >= 2")
    p, alpha, M, Np = case.p, case.alpha, case.M, case.Nprime
    params = {"N": N, "p": p, "alpha": alpha, "M": M, "Nprime": Np}
    pa = p ** (alpha - 1)
    mp = _compare("SPROP", mobius_product(N, order), mobius_product(Np, order), params)
    if not mp.passed:
        mp.notes.append("Moebius products over divisors of N and N' differ")
        return mp
    core = _euler_power(pa * Np, pa, order) / euler_series(Np, order)
    first = core ** ((p - 1) * euler_phi(M))
    _, second = saito_series(Np, order)
    _, target = saito_series(N, order)
    return _compare("SPROP", first * second, target, params)


def nonneg_report(N: int, order: int) -> NonnegReport:
    pre, s = saito_series(N, order)
    r = nonneg_scan(s)
    fn = None
    if not r.passed:
        fn = (r.first_discrepancy["n"], r.first_discrepancy["coeff"])
    return NonnegReport(N, order, pre, r.passed, fn)
