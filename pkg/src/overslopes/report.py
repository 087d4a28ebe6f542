"""Verification records shared by every checking routine and the CLI."""
from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

OUTCOMES = ("pass", "fail", "error")

CSV_FIELDS = ("claim", "params", "outcome", "elapsed_ms", "mismatches", "details")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json_obj"):
        return obj.to_json_obj()
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


@dataclass
class VerificationReport:
    """Outcome of checking one claim at one parameter point.

    ``details["mismatches"]`` lists the offending entries; a passing report
    always has an empty list there.
    """

    claim: str
    params: dict
    outcome: str
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"outcome must be one of {OUTCOMES}, got {self.outcome!r}")
        self.details.setdefault("mismatches", [])
        if self.outcome == "pass" and self.details["mismatches"]:
            raise ValueError("a passing report cannot carry mismatches")

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": _jsonable(self.params),
            "outcome": self.outcome,
            "details": _jsonable(self.details),
            "elapsed_ms": round(self.elapsed, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv_row(self) -> dict:
        d = self.to_dict()
        details = dict(d["details"])
        mism = details.pop("mismatches")
        return {
            "claim": d["claim"],
            "params": json.dumps(d["params"], sort_keys=True),
            "outcome": d["outcome"],
            "elapsed_ms": d["elapsed_ms"],
            "mismatches": len(mism),
            "details": json.dumps(details, sort_keys=True),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(d["claim"], d["params"], d["outcome"], d.get("details", {}), d.get("elapsed_ms", 0.0))


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.to_csv_row())
    return buf.getvalue()


class _Clock:
    ms = 0.0


@contextmanager
def timed():
    """Context manager whose ``.ms`` holds the elapsed wall time afterwards."""
    clock = _Clock()
    t0 = time.perf_counter()
    try:
        yield clock
    finally:
        clock.ms = (time.perf_counter() - t0) * 1000.0


def make_report(claim: str, params: dict, mismatches: list, elapsed: float, **details) -> VerificationReport:
    details["mismatches"] = mismatches
    return VerificationReport(claim, params, "fail" if mismatches else "pass", details, elapsed)
