"""Experiment reports and their JSON / CSV serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import __version__

SCHEMA_VERSION = 1

CSV_COLUMNS = ("id", "kind", "params", "lhs", "rhs", "target", "rel_err", "tolerance", "status", "pass", "seed")


@dataclass
class ExperimentReport:
    """Outcome of one experiment.

    ``status`` is "pass", "fail" or "inapplicable" (an identity whose sides
    are not both finite). ``params`` holds everything needed to replay the
    experiment; ``table`` holds per-point rows for sweeps and demos.
    ``wall_time`` is informational and never serialized, so that reruns
    produce byte-identical files.
    """

    id: str
    kind: str
    params: dict
    lhs: float | None = None
    rhs: float | None = None
    lhs_err: float = 0.0
    rhs_err: float = 0.0
    target: float | None = None
    rel_err: float | None = None
    tolerance: float | None = None
    status: str = "pass"
    notes: list = field(default_factory=list)
    table: list = field(default_factory=list)
    spec: dict = field(default_factory=dict)
    seed: int = 0
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "id": self.id,
            "kind": self.kind,
            "params": _clean(self.params),
            "values": {"lhs": _clean(self.lhs), "rhs": _clean(self.rhs)},
            "errors": {"lhs": _clean(self.lhs_err), "rhs": _clean(self.rhs_err)},
            "target": _clean(self.target),
            "rel_err": _clean(self.rel_err),
            "tolerance": _clean(self.tolerance),
            "status": self.status,
            "pass": self.passed,
            "notes": list(self.notes),
            "table": _clean(self.table),
            "spec": _clean(self.spec),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        return cls(
            id=d["id"], kind=d["kind"], params=_restore(d["params"]),
            lhs=_restore(d["values"]["lhs"]), rhs=_restore(d["values"]["rhs"]),
            lhs_err=_restore(d["errors"]["lhs"]), rhs_err=_restore(d["errors"]["rhs"]),
            target=_restore(d["target"]), rel_err=_restore(d["rel_err"]),
            tolerance=_restore(d["tolerance"]), status=d["status"], notes=list(d["notes"]),
            table=_restore(d["table"]), spec=_restore(d["spec"]), seed=d["seed"],
        )

    def csv_row(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "params": json.dumps(_clean(self.params), sort_keys=True, separators=(",", ":")),
            "lhs": _fmt(self.lhs),
            "rhs": _fmt(self.rhs),
            "target": _fmt(self.target),
            "rel_err": _fmt(self.rel_err),
            "tolerance": _fmt(self.tolerance),
            "status": self.status,
            "pass": int(self.passed),
            "seed": self.seed,
        }


def _clean(x: Any) -> Any:
    """JSON-safe copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


def _restore(x: Any) -> Any:
    if isinstance(x, dict):
        return {k: _restore(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_restore(v) for v in x]
    if x in ("inf", "-inf", "nan"):
        return float(x)
    return x


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def reports_to_json(reports: list[ExperimentReport], header: dict | None = None) -> str:
    doc = {"schema": SCHEMA_VERSION, "version": __version__, **(_clean(header or {})),
           "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def reports_to_csv(reports: list[ExperimentReport], header: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(f"# kplane {__version__} schema {SCHEMA_VERSION}\n")
    for key, val in sorted((header or {}).items()):
        buf.write(f"# {key}: {json.dumps(_clean(val), sort_keys=True)}\n")
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def reports_from_json(text: str) -> list[ExperimentReport]:
    doc = json.loads(text)
    return [ExperimentReport.from_dict(d) for d in doc["reports"]]
