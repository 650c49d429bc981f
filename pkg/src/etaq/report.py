"""Verification report shared by identity checks and nonnegativity scans."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
SCAN_PASS = "scan-pass"
SCAN_FAIL = "scan-fail"


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``first_discrepancy`` holds the first coefficient that broke the check
    (keys ``n`` and, for bivariate series, ``i``; values as ints), or None.
    Conjecture scans use the ``scan-*`` statuses so they never read as proofs.
    """

    id: str
    status: str
    order: int
    params: dict = field(default_factory=dict)
    first_discrepancy: Optional[dict] = None
    notes: list = field(default_factory=list)
    elapsed_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status in (PASS, SCAN_PASS)

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        fd = None
        if self.first_discrepancy is not None:
            fd = {k: (str(v) if k in ("coeff", "lhs", "rhs") else v)
                  for k, v in self.first_discrepancy.items()}
        out = {
            "id": self.id,
            "params": dict(self.params),
            "status": self.status,
            "order": self.order,
            "firstDiscrepancy": fd,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if timings and self.elapsed_ms is not None:
            out["elapsedMs"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=False)

    def line(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        s = f"{self.id:<9} {ps:<28} order={self.order:<4} {self.status}"
        if self.first_discrepancy is not None:
            s += f"  at {self.first_discrepancy}"
        return s


def combine(id: str, reports: list[VerificationReport], params=None, order=None,
            scan: bool = False) -> VerificationReport:
    """Fold sub-reports into one: fails at the first failing sub-report."""
    ok_status, bad_status = (SCAN_PASS, SCAN_FAIL) if scan else (PASS, FAIL)
    order = order if order is not None else max((r.order for r in reports), default=0)
    for r in reports:
        if not r.passed:
            disc = dict(r.first_discrepancy or {})
            disc = {"params": dict(r.params), **disc}
            return VerificationReport(id, bad_status, order, dict(params or {}), disc,
                                      list(r.notes))
    return VerificationReport(id, ok_status, order, dict(params or {}))
