"""Oracle comparison records and their CSV form."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, List, Optional

FLOOR = 1e-300
CSV_COLUMNS = ["quantity", "gamma", "lambda", "t", "analytic", "numeric", "rel_err", "tol", "pass"]


@lru_cache(maxsize=None)
def tolerances() -> dict:
    """Frozen tolerance manifest shipped with the package."""
    text = resources.files(__package__).joinpath("tolerances.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    analytic: float
    numeric: float
    rel_err: float
    tol: float
    passed: bool
    gamma: float = math.nan
    lam: float = math.nan
    t: float = math.nan

    def row(self):
        return [
            self.quantity,
            _fmt(self.gamma),
            _fmt(self.lam),
            _fmt(self.t),
            _fmt(self.analytic),
            _fmt(self.numeric),
            _fmt(self.rel_err),
            _fmt(self.tol),
            "true" if self.passed else "false",
        ]


def _fmt(v):
    return f"{float(v):.16e}"


def compare(analytic, numeric, tolerance, quantity="", gamma=math.nan, lam=math.nan, t=math.nan):
    analytic = float(analytic)
    numeric = float(numeric)
    if math.isfinite(numeric):
        rel = abs(analytic - numeric) / max(abs(analytic), FLOOR)
    else:
        rel = math.inf
    return OracleReport(quantity, analytic, numeric, rel, tolerance, rel <= tolerance, gamma, lam, t)


def failure(quantity, reason_value=math.nan, tol=0.0, gamma=math.nan, lam=math.nan, t=math.nan):
    """Report for a check that could not run at all."""
    return OracleReport(quantity, reason_value, math.nan, math.inf, tol, False, gamma, lam, t)


def worst(reports: Iterable[OracleReport]) -> Optional[OracleReport]:
    """The report with the largest error relative to its own tolerance."""
    best = None
    score = -1.0
    for r in reports:
        s = r.rel_err / r.tol if r.tol > 0 else math.inf
        if best is None or s > score:
            best, score = r, s
    return best


def write_reports_csv(path, reports: List[OracleReport]):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow(r.row())
