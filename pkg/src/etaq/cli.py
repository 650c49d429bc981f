"""Command-line entry point: ``etaq <subcommand> [flags]``.

Exit status is 0 when everything passed, 1 when a check failed (the report is
still printed) and 2 for usage errors.  Output never depends on ``--jobs``:
grid points are evaluated in a process pool but emitted in grid order.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from . import identities as ids
from .pcore import MAX_BRUTE_N, count_tcores, positivity_scan, tcore_series
from .products import EtaQuotientSpec, eta_quotient
from .report import VerificationReport
from .saito import NonnegReport, nonneg_report, saito_prefactor, saito_series
from .series import BiSeries, UniSeries, nonneg_scan, series_from_json, series_to_json
from .theta import c_series, f_component, klyachko_theta

MAX_ORDER = 20000
FORMATS = ("plain", "csv", "json")


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# flag parsing helpers
# --------------------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..6"``, ``"1,3,5"`` or a mix like ``"2..4,7"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, _, hi = part.partition("..")
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise UsageError(f"bad range {text!r}") from None
            if hi_i < lo_i:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise UsageError(f"bad integer {part!r} in {text!r}") from None
    return out


def parse_window(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    lo, sep, hi = text.partition(":")
    try:
        w = (int(lo), int(hi))
    except ValueError:
        raise UsageError(f"bad window {text!r}; expected ZMIN:ZMAX (write --window=-60:60)")
    if not sep or w[0] > w[1]:
        raise UsageError(f"bad window {text!r}")
    return w


def _check_order(order: int) -> int:
    if order < 0:
        raise UsageError("--order must be nonnegative")
    if order > MAX_ORDER:
        raise UsageError(f"--order {order} exceeds the guard limit {MAX_ORDER}")
    return order


# --------------------------------------------------------------------------
# on-disk cache
# --------------------------------------------------------------------------


def cache_dir() -> Path:
    env = os.environ.get("ETAQ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "etaq"


def _cache_path(key: str) -> Path:
    return cache_dir() / (hashlib.sha256(key.encode()).hexdigest()[:32] + ".json")


def cached_series(key: str, univariate: bool, build: Callable, use_cache: bool):
    """Look ``key`` up on disk; on a miss build the series and store it."""
    if not use_cache:
        return build()
    path = _cache_path(key)
    if path.exists():
        try:
            doc = json.loads(path.read_text())
            if doc.get("key") == key:
                return series_from_json(json.dumps(doc["series"]), univariate=univariate)
        except (OSError, ValueError, KeyError):
            pass  # a damaged entry is just rebuilt
    s = build()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": key, "series": json.loads(series_to_json(s))}))
        tmp.replace(path)
    except OSError:
        pass
    return s


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _fmt_term(c: int, n: int, var: str = "q") -> str:
    mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def plain_uni(s: UniSeries) -> str:
    terms = [_fmt_term(c, n) for n, c in enumerate(s.coeffs) if c]
    body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    return f"{body} + O(q^{s.order + 1})"


def csv_uni(s: UniSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "coeff"])
    for n, c in enumerate(s.coeffs):
        w.writerow([n, c])
    return buf.getvalue().rstrip("\n")


def csv_bi(b: BiSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "zexp", "coeff"])
    for n, i, c in b.iter_terms():
        w.writerow([n, i, c])
    return buf.getvalue().rstrip("\n")


def plain_bi(b: BiSeries) -> str:
    lines = []
    for n in range(b.order + 1):
        row = b.row(n)
        lines.append(f"q^{n}: {row}")
    return "\n".join(lines)


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def report_text(reports: Sequence[VerificationReport], fmt: str, timings: bool) -> str:
    if fmt == "json":
        return "\n".join(r.to_json(timings) for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "params", "order", "status", "firstDiscrepancy"])
        for r in reports:
            d = r.to_dict()
            w.writerow([r.id, json.dumps(d["params"]), r.order, r.status,
                        json.dumps(d["firstDiscrepancy"])])
        return buf.getvalue().rstrip("\n")
    return "\n".join(r.line() for r in reports)


# --------------------------------------------------------------------------
# parallel fan-out
# --------------------------------------------------------------------------


def fan_out(fn: Callable, items: Iterable, jobs: int) -> list:
    """``[fn(x) for x in items]``, in a process pool when jobs > 1; order kept."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _verify_job(arg) -> VerificationReport:
    id, order, kw = arg
    return ids.verify(id, order, **kw)


def _nonneg_job(arg) -> NonnegReport:
    N, order = arg
    return nonneg_report(N, order)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

PARAM_FLAGS = ("a", "b", "t", "p", "M", "N", "L", "i", "j", "m", "n")


def _grid(args, names: Sequence[str]) -> list[dict]:
    """Cartesian product of the range flags an identity takes, in flag order."""
    given = {k: parse_range(getattr(args, k)) for k in PARAM_FLAGS
             if k in names and getattr(args, k) is not None}
    extra = [k for k in PARAM_FLAGS if getattr(args, k) is not None and k not in names]
    if extra:
        raise UsageError(f"{args.id} does not take {', '.join('--' + k for k in extra)}")
    keys = [k for k in names if k in given]
    return [dict(zip(keys, vals)) for vals in itertools.product(*(given[k] for k in keys))]


def _identity(text: str) -> ids.IdentityId:
    try:
        return ids.IdentityId(text.upper())
    except ValueError:
        known = ", ".join(i.value for i in ids.IdentityId)
        raise UsageError(f"unknown identity {text!r}; known: {known}") from None


def cmd_expand(args) -> tuple[str, int]:
    order = _check_order(args.order)
    spec = EtaQuotientSpec.parse(args.eta)
    key = f"eta|{spec}|order={order}"
    exp = eta_quotient(spec, 0)
    s = cached_series(key, True, lambda: eta_quotient(spec, order).series, not args.no_cache)
    code = 0
    if args.nonneg and not nonneg_scan(s).passed:
        code = 1
    if args.format == "csv":
        return csv_uni(s), code
    if args.format == "json":
        doc = {"eta": str(spec), "prefactor": _frac(exp.prefactor),
               "series": json.loads(series_to_json(s))}
        return json.dumps(doc), code
    return f"q^({_frac(exp.prefactor)}) * ({plain_uni(s)})", code


def cmd_saito(args) -> tuple[str, int]:
    order = _check_order(args.order)
    Ns = parse_range(args.N)
    if args.series:
        if len(Ns) != 1:
            raise UsageError("--series needs a single N")
        N = Ns[0]
        s = cached_series(f"saito|N={N}|order={order}", True,
                          lambda: saito_series(N, order)[1], not args.no_cache)
        text = csv_uni(s) if args.format == "csv" else (
            json.dumps({"N": N, "prefactor": _frac(saito_prefactor(N)),
                        "series": json.loads(series_to_json(s))})
            if args.format == "json" else
            f"q^({_frac(saito_prefactor(N))}) * ({plain_uni(s)})")
        r = nonneg_scan(s)
        return text, 0 if r.passed else 1
    reps = fan_out(_nonneg_job, [(N, order) for N in Ns], args.jobs)
    if args.format == "json":
        text = "\n".join(r.to_json() for r in reps)
    elif args.format == "csv":
        rows = ["N,order,prefactor,pass,firstNegativeN,firstNegativeCoeff"]
        for r in reps:
            fn = r.first_negative or ("", "")
            rows.append(f"{r.N},{r.order},{_frac(r.prefactor)},{str(r.passed).lower()},"
                        f"{fn[0]},{fn[1]}")
        text = "\n".join(rows)
    else:
        text = "\n".join(
            f"N={r.N:<4} order={r.order:<5} prefactor={_frac(r.prefactor):<8} "
            + ("pass" if r.passed else f"fail  first negative at n={r.first_negative[0]}: "
               f"{r.first_negative[1]}")
            for r in reps)
    return text, 0 if all(r.passed for r in reps) else 1


def cmd_theta(args) -> tuple[str, int]:
    order = _check_order(args.order)
    a = args.a
    if args.klyachko:
        s = klyachko_theta(a, order)
        if args.format == "csv":
            return csv_uni(s), 0
        if args.format == "json":
            return series_to_json(s), 0
        return plain_uni(s), 0
    b = f_component(a, args.component, order) if args.component is not None else c_series(a, order)
    if args.format == "csv":
        return csv_bi(b), 0
    if args.format == "json":
        return series_to_json(b), 0
    return plain_bi(b), 0


def cmd_pcore(args) -> tuple[str, int]:
    order = _check_order(args.order)
    ts = parse_range(args.t)
    if args.scan:
        r = positivity_scan(min(ts), max(ts), order)
        return report_text([r], args.format, args.timings), 0 if r.passed else 1
    if args.brute and order > MAX_BRUTE_N:
        raise UsageError(f"--brute needs --order <= {MAX_BRUTE_N}")
    rows = []
    status = 0
    for t in ts:
        s = tcore_series(t, order)
        for n, c in enumerate(s.coeffs):
            row = {"t": t, "n": n, "coeff": c}
            if args.brute:
                row["brute"] = count_tcores(t, n)
                if row["brute"] != c:
                    status = 1
            rows.append(row)
    if args.format == "json":
        return "\n".join(json.dumps({k: (str(v) if k in ("coeff", "brute") else v)
                                     for k, v in r.items()}) for r in rows), status
    cols = ["t", "n", "coeff"] + (["brute"] if args.brute else [])
    sep = "," if args.format == "csv" else " "
    lines = [sep.join(cols)] + [sep.join(str(r[c]) for c in cols) for r in rows]
    return "\n".join(lines), status


def cmd_verify(args) -> tuple[str, int]:
    id = _identity(args.id)
    if id in ids.SCAN_ONLY:
        raise UsageError(f"{id.value} is a conjecture; use the scan subcommand")
    order = None if args.order is None else _check_order(args.order)
    _, names, _, _ = ids.IDENTITIES[id]
    grid = _grid(args, names) or [{}]
    jobs = [(id, order, kw) for kw in grid]
    reps = fan_out(_verify_job, jobs, args.jobs)
    return report_text(reps, args.format, args.timings), 0 if all(r.passed for r in reps) else 1


def cmd_scan(args) -> tuple[str, int]:
    id = _identity(args.id)
    if id not in ids.SCAN_ONLY:
        raise UsageError(f"{id.value} is not a conjecture; use the verify subcommand")
    order = None if args.order is None else _check_order(args.order)
    window = parse_window(args.window)
    if id in ids.NEEDS_WINDOW and window is None:
        raise UsageError(f"{id.value} requires windowed mode: pass --window=ZMIN:ZMAX")
    _, names, _, _ = ids.IDENTITIES[id]
    grid = _grid(args, [n for n in names if n != "window"]) or [{}]
    jobs = [(id, order, ids.scan_point(id, g, window)) for g in grid]
    point_reps = fan_out(_verify_job, jobs, args.jobs)
    rep = ids.combine_scan(id, grid, point_reps, order, window)
    if args.timings:
        rep.elapsed_ms = sum(r.elapsed_ms or 0.0 for r in point_reps)
    reps = point_reps + [rep] if args.each else [rep]
    return report_text(reps, args.format, args.timings), 0 if rep.passed else 1


def cmd_cache(args) -> tuple[str, int]:
    d = cache_dir()
    if args.action == "path":
        return str(d), 0
    files = sorted(d.glob("*.json")) if d.is_dir() else []
    if args.action == "list":
        keys = []
        for f in files:
            try:
                keys.append(json.loads(f.read_text())["key"])
            except (OSError, ValueError, KeyError):
                keys.append(f"<unreadable {f.name}>")
        return "\n".join(sorted(keys)), 0
    for f in files:
        f.unlink()
    return f"removed {len(files)} entries from {d}", 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, order_default: Optional[int]) -> None:
    p.add_argument("--order", type=int, default=order_default,
                   help="truncation order (exact through q^order)")
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    p.add_argument("--jobs", type=int, default=1, metavar="K",
                   help="worker processes for independent grid points")
    p.add_argument("--no-cache", action="store_true", help="bypass the on-disk series cache")
    p.add_argument("--timings", action="store_true",
                   help="include elapsedMs in reports (makes output run-dependent)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="etaq", description="Exact q-series expansions and "
                                 "identity checks for eta products and theta sums.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand an eta quotient")
    _common(p, 20)
    p.add_argument("--eta", required=True, metavar="SPEC", help='e.g. "5^5 * 1^-1"')
    p.add_argument("--nonneg", action="store_true",
                   help="exit 1 if any coefficient is negative")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("saito", help="nonnegativity reports for S_N")
    _common(p, 200)
    p.add_argument("--N", required=True, help="N or a range such as 2..60")
    p.add_argument("--series", action="store_true", help="print the series itself")
    p.set_defaults(func=cmd_saito)

    p = sub.add_parser("theta", help="theta lattice sums C_a, F_j or the Klyachko sum")
    _common(p, 10)
    p.add_argument("--a", "--t", dest="a", type=int, required=True)
    p.add_argument("--component", type=int, metavar="J", help="only F_J")
    p.add_argument("--klyachko", action="store_true", help="the univariate lattice sum")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("pcore", help="t-core counts a_t(n)")
    _common(p, 20)
    p.add_argument("--t", required=True, help="t or a range")
    p.add_argument("--brute", action="store_true", help="add the hook-length brute-force count")
    p.add_argument("--scan", action="store_true", help="check a_t(n) >= 1 over the t range")
    p.set_defaults(func=cmd_pcore)

    for name, func, helptext in (("verify", cmd_verify, "verify a catalog identity"),
                                 ("scan", cmd_scan, "scan a conjecture over a grid")):
        p = sub.add_parser(name, help=helptext)
        _common(p, None)
        p.add_argument("--id", required=True)
        for k in PARAM_FLAGS:
            p.add_argument(f"--{k}", metavar="RANGE")
        if name == "scan":
            p.add_argument("--window", metavar="ZMIN:ZMAX")
            p.add_argument("--each", action="store_true", help="also print per-point reports")
        p.set_defaults(func=func)

    p = sub.add_parser("cache", help="inspect or clear the series cache")
    p.add_argument("action", choices=("path", "list", "clear"))
    p.set_defaults(func=cmd_cache, out=None)
    return ap


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        text, code = args.func(args)
    except (UsageError, ValueError) as e:
        print(f"etaq: error: {e}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
