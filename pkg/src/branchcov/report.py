"""Run reports: line-delimited JSON records and a CSV summary.

Every number is written as a tagged object so that exact and floating values
cannot be confused on the way back in::

    {"exact": "3/4"}
    {"cyclotomic": {"d": 3, "coeffs": ["1", "-1"]}}
    {"float": "0.6931471805599453"}
    {"complex": ["0.25", "0.0"]}

Pending entries carry ``"status": "pending"`` and no value.  Output is
byte-deterministic: keys are sorted, floats (including mpmath values) are
written as the shortest round-tripping double, and nothing time-dependent
is written.
"""
from __future__ import annotations

import csv
import io
import json
import platform
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import mpmath

from . import __version__
from .cyclotomic import Cyclotomic
from .terms import Term

SCHEMA = "branchcov-report/1"
PASS, FAIL, PENDING = "pass", "fail", "pending"


@dataclass
class Record:
    id: str
    status: str
    values: Dict[str, Any] = field(default_factory=dict)
    bounds: Dict[str, Any] = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, PENDING, "exact", "numeric"):
            raise ValueError(f"bad status {self.status!r}")


@dataclass
class RunReport:
    command: str
    config: Dict[str, Any]
    records: List[Record] = field(default_factory=list)

    def add(self, rec: Record) -> Record:
        if any(r.id == rec.id for r in self.records):
            raise ValueError(f"duplicate record id {rec.id}")
        self.records.append(rec)
        return rec

    def failed(self) -> List[str]:
        return [r.id for r in self.records if r.status == FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed() else 0

    def get(self, rid: str) -> Optional[Record]:
        return next((r for r in self.records if r.id == rid), None)


def environment_stamp() -> Dict[str, str]:
    return {
        "package": __version__,
        "python": platform.python_version(),
        "mpmath": mpmath.__version__,
    }


# -- number tagging -------------------------------------------------------------


def _fmt_mpf(x) -> str:
    # shortest round-tripping double; reports are summaries, not high-precision stores
    return repr(float(x))


def encode_number(x) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return {"exact": str(x)}
    if isinstance(x, Fraction):
        return {"exact": str(x)}
    if isinstance(x, Cyclotomic):
        return {"cyclotomic": {"d": x.d, "coeffs": [str(c) for c in x.coeffs]}}
    if isinstance(x, float):
        return {"float": repr(x)}
    if isinstance(x, mpmath.mpf):
        return {"float": _fmt_mpf(x)}
    if isinstance(x, (complex, mpmath.mpc)):
        re, im = (x.real, x.imag)
        return {"complex": [_fmt_mpf(re), _fmt_mpf(im)]}
    if isinstance(x, (list, tuple)):
        return [encode_number(v) for v in x]
    if isinstance(x, dict):
        return {str(k): encode_number(v) for k, v in x.items()}
    if x is None or isinstance(x, str):
        return x
    raise TypeError(f"cannot serialise {type(x).__name__}")


def decode_number(x) -> Any:
    if isinstance(x, dict):
        if set(x) == {"exact"}:
            return Fraction(x["exact"])
        if set(x) == {"float"}:
            return float(x["float"])
        if set(x) == {"complex"}:
            return complex(float(x["complex"][0]), float(x["complex"][1]))
        if set(x) == {"cyclotomic"}:
            c = x["cyclotomic"]
            return Cyclotomic(c["d"], [Fraction(v) for v in c["coeffs"]])
        return {k: decode_number(v) for k, v in x.items()}
    if isinstance(x, list):
        return [decode_number(v) for v in x]
    return x


def record_from_term(rid: str, t: Term) -> Record:
    values: Dict[str, Any] = {}
    bounds: Dict[str, Any] = {}
    if t.value is not None:
        values["value"] = t.value
    if t.bound is not None:
        bounds["value"] = t.bound
    for k, v in t.details.items():
        values[k] = v
    return Record(rid, t.status, values, bounds, t.note)


# -- JSON lines -----------------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=True, separators=(",", ":"))


def to_jsonl(report: RunReport) -> str:
    lines = [
        _dumps(
            {
                "schema": SCHEMA,
                "command": report.command,
                "config": report.config,
                "environment": environment_stamp(),
            }
        )
    ]
    for r in report.records:
        lines.append(
            _dumps(
                {
                    "id": r.id,
                    "status": r.status,
                    "values": encode_number(r.values),
                    "bounds": encode_number(r.bounds),
                    "note": r.note,
                }
            )
        )
    return "\n".join(lines) + "\n"


def parse_jsonl(text: str) -> RunReport:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty report")
    head = json.loads(lines[0])
    if head.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {head.get('schema')!r}")
    rep = RunReport(head["command"], head["config"])
    for ln in lines[1:]:
        d = json.loads(ln)
        rep.add(Record(d["id"], d["status"], decode_number(d["values"]), decode_number(d["bounds"]), d["note"]))
    return rep


# -- CSV --------------------------------------------------------------------------


def _scalar_text(v) -> str:
    if v is None:
        return ""
    enc = encode_number(v)
    if isinstance(enc, dict) and len(enc) == 1:
        (tag, payload), = enc.items()
        if tag == "cyclotomic":
            return "cyclotomic(" + str(payload["d"]) + ";" + ";".join(payload["coeffs"]) + ")"
        if tag == "complex":
            return f"{payload[0]}{'+' if not payload[1].startswith('-') else ''}{payload[1]}j"
        return payload
    return json.dumps(enc, sort_keys=True)


def to_csv(report: RunReport) -> str:
    """One row per record: id, status, value, bound, note."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "status", "value", "bound", "note"])
    for r in report.records:
        w.writerow([r.id, r.status, _scalar_text(r.values.get("value")), _scalar_text(r.bounds.get("value")), r.note])
    return buf.getvalue()


def table_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(columns))
    for row in rows:
        w.writerow([_scalar_text(v) for v in row])
    return buf.getvalue()


def emit(report: RunReport, fmt: str = "json", path: Optional[str] = None, table=None) -> str:
    """Serialise and optionally write; returns the text.  ``table`` is an
    optional ``(columns, rows)`` pair used for the CSV form instead of the
    record summary."""
    if fmt == "json":
        text = to_jsonl(report)
    elif fmt == "csv":
        text = table_csv(*table) if table is not None else to_csv(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
