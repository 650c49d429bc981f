"""Catalog of identities and nonnegativity claims, each with an exact check.

Equalities are compared in cleared-denominator form, so both sides are exact
Laurent polynomials at every power of q.  Conjecture scans only ever report
``scan-pass`` / ``scan-fail``.
"""

from __future__ import annotations

import time
from enum import Enum
from typing import Callable, Iterable, Optional

from .numth import divisors
from .pcore import MAX_BRUTE_N, count_tcores, partitions, tcore_series
from .products import (
    bracket,
    euler_series,
    euler_tag,
    finite_pochhammer,
    gaussian_poly,
    pochhammer,
    q_pochhammer_series,
)
from .report import FAIL, PASS, SCAN_FAIL, SCAN_PASS, VerificationReport
from .saito import coprime_product, mobius_product, verify_case2, verify_case3
from .series import (
    Atom,
    BiSeries,
    FactorList,
    LaurentPoly,
    UniSeries,
    cancel_q0,
    expand_factors,
    expand_q,
    expand_windowed,
    nonneg_scan,
    reduce_mod_z_pow,
    shift_z_to_zq,
    substitute_z_one,
)
from .theta import (
    c_series,
    enumerate_lattice,
    f_component,
    klyachko_theta,
    qdiff_failures,
    r_factors,
    shift_source_order,
)

__all__ = [
    "IdentityId",
    "IDENTITIES",
    "verify",
    "scan_conjecture",
    "scan_point",
    "combine_scan",
    "crank",
    "crank_table",
    "crank_series",
    "coratq3_excluded_pair",
]


class IdentityId(str, Enum):
    THM1 = "THM1"
    CAZQ2 = "CAZQ2"
    KID = "KID"
    EPROP = "EPROP"
    DPROD = "DPROD"
    SPROP = "SPROP"
    PCORE1 = "PCORE1"
    ATQ = "ATQ"
    ATQFIN = "ATQFIN"
    CORATQ1 = "CORATQ1"
    CORATQ2 = "CORATQ2"
    CORATQ3 = "CORATQ3"
    CRANKGEN = "CRANKGEN"
    ACI = "ACI"
    RES1 = "RES1"
    RES2 = "RES2"
    EKIN = "EKIN"
    CAZQZERO = "CAZQZERO"
    FUNCEQ_R = "FUNCEQ_R"
    FUNCEQ_C = "FUNCEQ_C"
    FUNCEQ_F = "FUNCEQ_F"
    CONJ2A = "CONJ2A"
    CONJ2B = "CONJ2B"
    CONJ2C = "CONJ2C"


SCAN_ONLY = {IdentityId.CONJ2A, IdentityId.CONJ2B, IdentityId.CONJ2C}
NEEDS_WINDOW = {IdentityId.CONJ2A, IdentityId.CONJ2C}


# --------------------------------------------------------------------------
# comparison helpers
# --------------------------------------------------------------------------


def _first_diff_uni(lhs: UniSeries, rhs: UniSeries) -> Optional[dict]:
    for n in range(min(lhs.order, rhs.order) + 1):
        if lhs[n] != rhs[n]:
            return {"n": n, "lhs": lhs[n], "rhs": rhs[n]}
    return None


def _first_diff_bi(lhs: BiSeries, rhs: BiSeries) -> Optional[dict]:
    order = min(lhs.order, rhs.order)
    diff = lhs.truncate(order) - rhs.truncate(order)
    for n, i, _ in diff.iter_terms():
        return {"n": n, "i": i, "lhs": lhs.coeff(n, i), "rhs": rhs.coeff(n, i)}
    return None


def _first_diff(lhs, rhs) -> Optional[dict]:
    if isinstance(lhs, UniSeries) and isinstance(rhs, UniSeries):
        return _first_diff_uni(lhs, rhs)
    if isinstance(lhs, UniSeries):
        lhs = BiSeries.from_uni(lhs)
    if isinstance(rhs, UniSeries):
        rhs = BiSeries.from_uni(rhs)
    return _first_diff_bi(lhs, rhs)


class _Check:
    """Accumulates sub-checks; the first failure wins."""

    def __init__(self):
        self.failure: Optional[dict] = None
        self.notes: list[str] = []

    def equal(self, what: str, lhs, rhs) -> None:
        if self.failure is None:
            d = _first_diff(lhs, rhs)
            if d is not None:
                self.failure = {"check": what, **d}

    def nonneg(self, what: str, s) -> None:
        if self.failure is None:
            r = nonneg_scan(s)
            if not r.passed:
                self.failure = {"check": what, **r.first_discrepancy}

    def true(self, what: str, ok: bool, detail: Optional[dict] = None) -> None:
        if self.failure is None and not ok:
            self.failure = {"check": what, **(detail or {})}


# --------------------------------------------------------------------------
# builders: each returns a _Check after running its comparisons
# --------------------------------------------------------------------------


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _thm1(chk: _Check, order: int, a: int) -> None:
    _need(a >= 2, "THM1 needs a >= 2")
    c = c_series(a, order)
    lhs = c * expand_factors(bracket(1, 0, 1), order)
    rhs_fl = euler_tag(1, 1) * bracket(a, 0, a)
    if a > 2:
        rhs_fl = rhs_fl * euler_tag(a, a - 2)
    chk.equal("C_a [z;q] = E(q) E(q^a)^(a-2) [z^a;q^a]", lhs, expand_factors(rhs_fl, order))


def _cazq2_direct(order: int) -> BiSeries:
    terms: dict = {}
    n = 0
    while True:
        hit = False
        for m in (n, -n - 1) if n >= 0 else ():
            e = 2 * m * m + m
            if e <= order:
                hit = True
                terms[(e, 2 * m + 1)] = terms.get((e, 2 * m + 1), 0) + 1
                terms[(e, -2 * m)] = terms.get((e, -2 * m), 0) + 1
        if not hit:
            break
        n += 1
    return BiSeries.from_terms(terms, order)


def _cazq2(chk: _Check, order: int) -> None:
    direct = _cazq2_direct(order)
    prod = FactorList(num=(Atom(-1, 1, 0, 1), Atom(-1, -1, 1, 1))) * euler_tag(1, 1)
    chk.equal("sum q^(2n^2+n)(z^(2n+1)+z^(-2n)) = C_2", direct, c_series(2, order))
    chk.equal("sum q^(2n^2+n)(z^(2n+1)+z^(-2n)) = (-z;q)(-q/z;q)(q;q)",
              direct, expand_factors(prod, order))


def _kid(chk: _Check, order: int, t: int) -> None:
    _need(t >= 1, "KID needs t >= 1")
    rhs = euler_series(t, order) ** t / euler_series(1, order)
    chk.equal("lattice sum = E(q^t)^t / E(q)", klyachko_theta(t, order), rhs)


def _pcore1(chk: _Check, order: int, t: int) -> None:
    _need(t >= 1, "PCORE1 needs t >= 1")
    _need(order <= MAX_BRUTE_N, f"PCORE1 brute force needs order <= {MAX_BRUTE_N}")
    brute = UniSeries([count_tcores(t, n) for n in range(order + 1)])
    chk.equal("hook-length count = E(q^t)^t / E(q)", brute, tcore_series(t, order))


def _eprop(chk: _Check, order: int, M: int) -> None:
    _need(M >= 1, "EPROP needs M >= 1")
    chk.equal("prod_{d|M} E(q^d)^mu(d) = prod_{(n,M)=1} (1-q^n)",
              mobius_product(M, order), coprime_product(M, order))


def _dprod(chk: _Check, order: int, N: int) -> None:
    r = verify_case2(N, order)
    chk.true("prod_r D_p(q^r;q^M) = S_N", r.passed, r.first_discrepancy)


def _sprop(chk: _Check, order: int, N: int, p: Optional[int] = None) -> None:
    r = verify_case3(N, order, p)
    chk.true("S_N = (E(q^(p^(a-1)N'))^(p^(a-1))/E(q^N'))^((p-1)phi(M)) S_N'",
             r.passed, r.first_discrepancy)


def _atq(chk: _Check, order: int, i: int, j: int) -> None:
    _need(i >= 1 and j >= 1, "ATQ specialization needs i, j >= 1")
    inf = None
    lhs = (q_pochhammer_series(i + j, 1, inf, order)
           / (q_pochhammer_series(i, 1, inf, order) * q_pochhammer_series(j, 1, inf, order)))
    rhs = UniSeries.zero(order)
    n = 0
    while j * n <= order:
        den = q_pochhammer_series(i + n, 1, inf, order) * q_pochhammer_series(1, 1, n, order)
        term = UniSeries.from_terms({j * n: 1}, order) / den
        rhs = rhs + term
        n += 1
    chk.equal("(at;q)/((a;q)(t;q)) = sum t^n/((aq^n;q)(q)_n) at a=q^i, t=q^j", lhs, rhs)
    chk.nonneg("(at;q)/((a;q)(t;q)) >= 0", lhs)


def _atqfin(chk: _Check, order: int, L: int, i: int, j: int) -> None:
    _need(L >= 0 and i >= 1 and j >= 1, "ATQFIN needs L >= 0, i, j >= 1")
    lhs = (q_pochhammer_series(i + j, 1, L, order)
           / (q_pochhammer_series(i, 1, L, order) * q_pochhammer_series(j, 1, L, order)))
    rhs = UniSeries.zero(order)
    for k in range(L + 1):
        g = UniSeries(gaussian_poly(L - k, k).coeffs[: order + 1], order)
        num = g * UniSeries.from_terms({i * k: 1}, order)
        den = (q_pochhammer_series(i + L - k, 1, k, order)
               * q_pochhammer_series(j + k, 1, L - k, order))
        rhs = rhs + num / den
    chk.equal("finite (z1 z2;q)_L/((z1;q)_L (z2;q)_L) expansion at z1=q^i, z2=q^j", lhs, rhs)
    chk.nonneg("finite quotient >= 0", lhs)


def _coratq1(chk: _Check, order: int, a: int, b: int, M: int) -> None:
    _need(min(a, b, M) >= 1, "CORATQ1 needs a, b, M >= 1")
    fl = FactorList(num=(Atom(1, 0, a + b, M),), den=(Atom(1, 0, a, M), Atom(1, 0, b, M)))
    chk.nonneg("prod (1-q^(Mn+a+b))/((1-q^(Mn+a))(1-q^(Mn+b))) >= 0", expand_q(fl, order))


def _coratq2(chk: _Check, order: int, m: int, n: int) -> None:
    _need(m > 1 and n > 1, "CORATQ2 needs m, n > 1")
    s = euler_series(m, order) * euler_series(n, order) / euler_series(1, order)
    chk.nonneg("E(q^m) E(q^n) / E(q) >= 0", s)


def _coratq3_series(order: int, m: int, n: int) -> UniSeries:
    return (euler_series(m, order) * euler_series(n, order) * euler_series(m * n, order)
            / euler_series(1, order))


def _coratq3(chk: _Check, order: int, m: int, n: int) -> None:
    _need(m > 1 and n > 1 and (m, n) != (2, 2), "CORATQ3 needs m, n > 1, not both 2")
    chk.nonneg("E(q^m) E(q^n) E(q^mn) / E(q) >= 0", _coratq3_series(order, m, n))


def coratq3_excluded_pair(order: int = 80) -> VerificationReport:
    """Expand the excluded case m = n = 2 and record its first negative coefficient."""
    r = nonneg_scan(_coratq3_series(order, 2, 2), id="CORATQ3")
    r.params = {"m": 2, "n": 2}
    r.notes.append("pair excluded by hypothesis; expanded for documentation only")
    return r


def crank(parts) -> int:
    """Crank: largest part if there are no ones, else (#parts > #ones) - #ones."""
    ones = sum(1 for p in parts if p == 1)
    if ones == 0:
        return parts[0] if parts else 0
    return sum(1 for p in parts if p > ones) - ones


def crank_table(nmax: int) -> dict[int, dict[int, int]]:
    """``{n: {m: M(m, n)}}`` by brute force over all partitions."""
    if not 0 <= nmax <= 25:
        raise ValueError("crank_table is limited to nmax <= 25")
    out = {}
    for n in range(nmax + 1):
        row: dict[int, int] = {}
        for lam in partitions(n):
            c = crank(lam)
            row[c] = row.get(c, 0) + 1
        out[n] = row
    return out


def crank_series(order: int) -> BiSeries:
    """``(1 - z) E(q) / [z; q]_inf`` with the q^0 factor cancelled."""
    fl = FactorList(num=(Atom(1, 1, 0, 1, 1),)) * euler_tag(1, 1) / bracket(1, 0, 1)
    return expand_factors(cancel_q0(fl), order)


def _crankgen(chk: _Check, order: int) -> None:
    _need(order <= 25, "CRANKGEN brute force needs order <= 25")
    cs = crank_series(order)
    prod = euler_tag(1, 1) / (pochhammer(1, 1, 1) * pochhammer(-1, 1, 1))
    chk.equal("(1-z)E(q)/[z;q] = prod (1-q^n)/((1-zq^n)(1-q^n/z))",
              cs, expand_factors(prod, order))
    table = crank_table(order)
    rows = [LaurentPoly.from_dict({0: 1})]
    if order >= 1:
        rows.append(LaurentPoly.from_dict({1: 1, -1: 1, 0: -1}))
    rows += [LaurentPoly.from_dict(table[n]) for n in range(2, order + 1)]
    chk.equal("coefficients = 1 + (z + 1/z - 1) q + sum M(m,n) z^m q^n",
              cs, BiSeries.from_rows(rows, order))
    chk.notes.append("q^1 row excluded from the crank comparison (the z^0 q^1 coefficient is -1)")


def _aci(chk: _Check, order: int) -> None:
    fl = FactorList(num=(Atom(1, 2, 0, 1, 1),)) * euler_tag(1, 1) / bracket(1, 0, 1)
    s = expand_factors(cancel_q0(fl), order)
    one_plus_z = BiSeries.from_terms({(0, 0): 1, (0, 1): 1}, order)
    chk.equal("(1-z^2)E(q)/[z;q] = (1+z) * crank series", s, one_plus_z * crank_series(order))
    chk.nonneg("(1-z^2)E(q)/[z;q] >= 0", s)


def res1_factors() -> FactorList:
    return euler_tag(2, 1) * bracket(4, 0, 2) / (bracket(2, 0, 2) * bracket(3, 1, 2))


def res2_factors() -> FactorList:
    return euler_tag(3, 1) * pochhammer(2, 0, 3) / (pochhammer(-1, 3, 3) * pochhammer(1, 0, 1))


def _res1(chk: _Check, order: int) -> None:
    chk.nonneg("E(q^2)[z^4;q^2]/([z^2;q^2][qz^3;q^2]) >= 0",
               expand_factors(cancel_q0(res1_factors()), order))


def _res2(chk: _Check, order: int) -> None:
    chk.nonneg("E(q^3)(z^2;q^3)/((q^3/z;q^3)(z;q)) >= 0",
               expand_factors(cancel_q0(res2_factors()), order))


def _ekin(chk: _Check, order: int) -> None:
    # both sides multiplied by [z;q][z^3;q][z^3;q^3][z^-3 q;q^3][z^-3 q^2;q^3]
    common = bracket(3, 0, 3)
    lhs = bracket(2, 0, 1) * euler_tag(1, 1) * common * bracket(-3, 1, 3) * bracket(-3, 2, 3)
    rhs_base = euler_tag(3, 1) * bracket(1, 0, 1) * bracket(3, 0, 1)
    rhs = (expand_factors(rhs_base * bracket(-3, 2, 3), order)
           + expand_factors(rhs_base * bracket(-3, 1, 3), order).mul_z(1))
    chk.equal("Ekin identity, cleared", expand_factors(lhs, order), rhs)


def _equal_residue_rows(b: BiSeries, a: int) -> Optional[dict]:
    red = reduce_mod_z_pow(b, a)
    for n in range(red.order + 1):
        vals = [red.coeff(n, k) for k in range(a)]
        if len(set(vals)) > 1:
            return {"n": n, "residues": vals}
    return None


def _cazqzero(chk: _Check, order: int, a: int) -> None:
    _need(a >= 2, "CAZQZERO needs a >= 2")
    d = _equal_residue_rows(c_series(a, order), a)
    chk.true("C_a mod (z^a - 1) has equal residue sums", d is None, d)
    d = _equal_residue_rows(expand_factors(cancel_q0(r_factors(a)), order), a)
    chk.true("R_a mod (z^a - 1) has equal residue sums", d is None, d)
    chk.equal("C_a(1;q) = a * lattice sum",
              substitute_z_one(c_series(a, order)), klyachko_theta(a, order) * a)


def _funceq_r(chk: _Check, order: int, a: int) -> None:
    _need(a >= 2, "FUNCEQ_R needs a >= 2")
    fl = r_factors(a)
    shifted = expand_factors(cancel_q0(fl.shift_zq(1)), order)
    chk.equal("R_a(zq;q) = z^-(a-1) R_a(z;q)",
              shifted, expand_factors(cancel_q0(fl), order).mul_z(-(a - 1)))


def _shifted(b_of_order: Callable[[int], BiSeries], a: int, order: int) -> BiSeries:
    src = b_of_order(shift_source_order(a, order))
    return shift_z_to_zq(src).truncate(order).mul_z(a - 1)


def _funceq_c(chk: _Check, order: int, a: int) -> None:
    _need(a >= 2, "FUNCEQ_C needs a >= 2")
    chk.equal("C_a(zq;q) z^(a-1) = C_a(z;q)",
              _shifted(lambda o: c_series(a, o), a, order), c_series(a, order))


def _funceq_f(chk: _Check, order: int, a: int) -> None:
    _need(a >= 2, "FUNCEQ_F needs a >= 2")
    F = {j: f_component(a, j, order) for j in range(a)}
    for j in range(2, a):
        chk.equal(f"F_{j}(zq;q) z^(a-1) = F_{j - 1}(z;q)",
                  _shifted(lambda o, j=j: f_component(a, j, o), a, order), F[j - 1])
    chk.equal(f"F_0(zq;q) z^(a-1) = F_{a - 1}(z;q)",
              _shifted(lambda o: f_component(a, 0, o), a, order), F[a - 1])
    chk.equal("F_1(zq;q) z^(a-1) = F_0(z;q)",
              _shifted(lambda o: f_component(a, 1, o), a, order), F[0])
    bad = qdiff_failures(a, enumerate_lattice(a, order))
    chk.true("Q-difference identities on the enumerated lattice", not bad,
             {"identity": bad[0][0], "vector": list(bad[0][1])} if bad else None)


def conj2a_factors(p: int) -> FactorList:
    return euler_tag(1, 1) / (pochhammer(1, 0, 1) * pochhammer(-p, 1, 1))


def conj2b_factors(a: int, b: int, m: int, n: int) -> FactorList:
    K = m * a + n * b
    return euler_tag(K, 1) / FactorList(num=(Atom(1, 0, a, K), Atom(1, 0, b, K)))


def conj2c_factors(a: int) -> FactorList:
    return bracket(a, 0, 1) * euler_tag(1, 1) / (bracket(1, 0, 1) * bracket(a + 1, 0, 1))


def _conj2a(chk: _Check, order: int, p: int, window) -> None:
    _need(p >= 1, "CONJ2A needs p >= 1")
    chk.nonneg("E(q)/((z;q)(q z^-p;q)) >= 0",
               expand_windowed(conj2a_factors(p), order, window))


def _conj2b(chk: _Check, order: int, a: int, b: int, m: int, n: int) -> None:
    _need(min(a, b, m, n) >= 1, "CONJ2B needs a, b, m, n >= 1")
    chk.nonneg("E(q^K)/((q^a;q^K)(q^b;q^K)) >= 0, K = ma+nb",
               expand_q(conj2b_factors(a, b, m, n), order))


def _conj2c(chk: _Check, order: int, a: int, window) -> None:
    _need(a >= 1, "CONJ2C needs a >= 1")
    chk.nonneg("[z^a;q] E(q)/([z;q][z^(a+1);q]) >= 0",
               expand_windowed(conj2c_factors(a), order, window))


# id -> (builder, parameter names, default parameters, default order)
IDENTITIES: dict[IdentityId, tuple[Callable, tuple[str, ...], dict, int]] = {
    IdentityId.THM1: (_thm1, ("a",), {"a": 3}, 40),
    IdentityId.CAZQ2: (_cazq2, (), {}, 40),
    IdentityId.KID: (_kid, ("t",), {"t": 3}, 100),
    IdentityId.EPROP: (_eprop, ("M",), {"M": 6}, 100),
    IdentityId.DPROD: (_dprod, ("N",), {"N": 10}, 150),
    IdentityId.SPROP: (_sprop, ("N", "p"), {"N": 12}, 150),
    IdentityId.PCORE1: (_pcore1, ("t",), {"t": 3}, 14),
    IdentityId.ATQ: (_atq, ("i", "j"), {"i": 1, "j": 1}, 60),
    IdentityId.ATQFIN: (_atqfin, ("L", "i", "j"), {"L": 3, "i": 1, "j": 1}, 40),
    IdentityId.CORATQ1: (_coratq1, ("a", "b", "M"), {"a": 1, "b": 1, "M": 1}, 80),
    IdentityId.CORATQ2: (_coratq2, ("m", "n"), {"m": 2, "n": 3}, 80),
    IdentityId.CORATQ3: (_coratq3, ("m", "n"), {"m": 2, "n": 3}, 80),
    IdentityId.CRANKGEN: (_crankgen, (), {}, 12),
    IdentityId.ACI: (_aci, (), {}, 50),
    IdentityId.RES1: (_res1, (), {}, 50),
    IdentityId.RES2: (_res2, (), {}, 50),
    IdentityId.EKIN: (_ekin, (), {}, 30),
    IdentityId.CAZQZERO: (_cazqzero, ("a",), {"a": 3}, 20),
    IdentityId.FUNCEQ_R: (_funceq_r, ("a",), {"a": 3}, 15),
    IdentityId.FUNCEQ_C: (_funceq_c, ("a",), {"a": 3}, 15),
    IdentityId.FUNCEQ_F: (_funceq_f, ("a",), {"a": 3}, 15),
    IdentityId.CONJ2A: (_conj2a, ("p", "window"), {"p": 1}, 100),
    IdentityId.CONJ2B: (_conj2b, ("a", "b", "m", "n"), {"a": 1, "b": 1, "m": 1, "n": 1}, 120),
    IdentityId.CONJ2C: (_conj2c, ("a", "window"), {"a": 1}, 100),
}


def verify(id, order: Optional[int] = None, **params) -> VerificationReport:
    """Run one catalog entry and report pass/fail with the first discrepancy.

    ``params`` are the entry's named integer parameters; unknown names raise
    ValueError.  Conjecture entries need ``window=(zmin, zmax)`` where the
    product has an uncancellable q^0 pole.
    """
    id = IdentityId(id)
    builder, names, defaults, default_order = IDENTITIES[id]
    unknown = set(params) - set(names)
    if unknown:
        raise ValueError(f"{id.value} does not take parameters {sorted(unknown)}")
    if id in NEEDS_WINDOW and params.get("window") is None:
        raise ValueError(f"{id.value} requires windowed mode: pass window=(zmin, zmax)")
    order = default_order if order is None else order
    if order < 0:
        raise ValueError("order must be nonnegative")
    full = {**defaults, **{k: v for k, v in params.items() if v is not None}}
    if "window" in full:
        full["window"] = tuple(full["window"])
    chk = _Check()
    t0 = time.perf_counter()
    builder(chk, order, **full)
    elapsed = (time.perf_counter() - t0) * 1000
    scan = id in SCAN_ONLY
    if chk.failure is None:
        status = SCAN_PASS if scan else PASS
    else:
        status = SCAN_FAIL if scan else FAIL
    shown = {k: (list(v) if isinstance(v, tuple) else v) for k, v in full.items()}
    return VerificationReport(id.value, status, order, shown, chk.failure, chk.notes, elapsed)


def scan_conjecture(id, grid: Iterable[dict], order: Optional[int] = None,
                    window=None) -> VerificationReport:
    """Scan a conjecture over a parameter grid; fails list every counterexample."""
    id = _scan_id(id, window)
    t0 = time.perf_counter()
    grid = [dict(g) for g in grid]
    reports = [verify(id, order, **scan_point(id, g, window)) for g in grid]
    out = combine_scan(id, grid, reports, order, window)
    out.elapsed_ms = (time.perf_counter() - t0) * 1000
    return out


def _scan_id(id, window) -> IdentityId:
    id = IdentityId(id)
    if id not in SCAN_ONLY:
        raise ValueError(f"{id.value} is not a conjecture")
    if id in NEEDS_WINDOW and window is None:
        raise ValueError(f"{id.value} requires a z-window")
    return id


def scan_point(id, params: dict, window) -> dict:
    """Keyword arguments for :func:`verify` at one grid point."""
    kw = dict(params)
    if IdentityId(id) in NEEDS_WINDOW:
        kw["window"] = window
    return kw


def combine_scan(id, grid: list[dict], reports: list[VerificationReport],
                 order: Optional[int], window) -> VerificationReport:
    """Fold per-point reports (in grid order) into one scan report."""
    id = IdentityId(id)
    failures = [{"params": g, **r.first_discrepancy}
                for g, r in zip(grid, reports) if not r.passed]
    used_order = reports[-1].order if reports else order
    shown: dict = {"points": len(grid)}
    if window is not None:
        shown["window"] = list(window)
    if failures:
        notes = [f"counterexample {f}" for f in failures]
        return VerificationReport(id.value, SCAN_FAIL, used_order, shown, failures[0], notes)
    return VerificationReport(id.value, SCAN_PASS, used_order, shown)
