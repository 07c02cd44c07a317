"""Check reports and serialization shared by all verification families.

Every verification routine returns a list of CheckReport rows.  A row records
the named inequality, the computed value, the published bound it is compared
against, the signed margin (bound - computed for upper bounds), and whether
the check passed.  Serializers render rows as CSV, JSON, or markdown with a
fixed float format so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field


FLOAT_FMT = "{:.12g}"

DEFAULT_REPORT_DIR_ENV = "ZC_REPORT_DIR"


def fmt(x) -> str:
    """Render a value with a fixed, locale-independent format."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return FLOAT_FMT.format(x)
    return str(x)


@dataclass
class CheckReport:
    """One named check: computed value vs published bound."""

    name: str
    computed: float
    bound: float
    passed: bool
    margin: float = 0.0
    detail: str = ""

    @classmethod
    def upper(cls, name: str, computed: float, bound: float, detail: str = "") -> "CheckReport":
        """Check that computed <= bound; margin is bound - computed."""
        return cls(name=name, computed=computed, bound=bound,
                   passed=computed <= bound, margin=bound - computed, detail=detail)

    @classmethod
    def lower(cls, name: str, computed: float, bound: float, detail: str = "") -> "CheckReport":
        """Check that computed >= bound; margin is computed - bound."""
        return cls(name=name, computed=computed, bound=bound,
                   passed=computed >= bound, margin=computed - bound, detail=detail)

    @classmethod
    def within(cls, name: str, computed: float, target: float, tol: float,
               detail: str = "") -> "CheckReport":
        """Check that |computed - target| <= tol; margin is tol - |difference|."""
        err = abs(computed - target)
        return cls(name=name, computed=computed, bound=target,
                   passed=err <= tol, margin=tol - err, detail=detail)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "computed": self.computed,
            "bound": self.bound,
            "margin": self.margin,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class RoundingPolicy:
    """Rounding discipline for comparisons against published constants.

    In conservative mode any quantity that must stay below a published bound
    is inflated by a relative slack before the comparison, so a pass can not
    be an artifact of the last few ulps.
    """

    mode: str = "nearest"
    slack: float = 2.0 ** -40

    def __post_init__(self):
        if self.mode not in ("nearest", "conservative"):
            raise ValueError("mode must be 'nearest' or 'conservative'")

    def upper_side(self, x: float) -> float:
        """Value used on the computed side of a `computed <= bound` check."""
        if self.mode == "nearest":
            return x
        return x + abs(x) * self.slack

    def check_upper(self, name: str, computed: float, bound: float,
                    detail: str = "") -> CheckReport:
        rep = CheckReport.upper(name, self.upper_side(computed), bound, detail)
        rep.computed = computed
        return rep


CSV_COLUMNS = ("name", "computed", "bound", "margin", "passed", "detail")


def reports_to_csv(reports: list[CheckReport]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in reports:
        row = (r.name, fmt(r.computed), fmt(r.bound), fmt(r.margin),
               fmt(r.passed), r.detail.replace(",", ";"))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def reports_to_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2,
                      sort_keys=False, default=float) + "\n"


def reports_to_markdown(reports: list[CheckReport]) -> str:
    lines = ["| check | computed | bound | margin | pass |",
             "|---|---|---|---|---|"]
    for r in reports:
        lines.append("| %s | %s | %s | %s | %s |" % (
            r.name, fmt(r.computed), fmt(r.bound), fmt(r.margin),
            "yes" if r.passed else "NO"))
    return "\n".join(lines) + "\n"


def rows_to_csv(columns: tuple, rows: list[tuple]) -> str:
    """Generic CSV for tabular (non-check) output."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def rows_to_markdown(columns: tuple, rows: list[tuple]) -> str:
    lines = ["| " + " | ".join(columns) + " |",
             "|" + "---|" * len(columns)]
    for row in rows:
        lines.append("| " + " | ".join(fmt(v) for v in row) + " |")
    return "\n".join(lines) + "\n"


def report_dir(default: str = ".") -> str:
    """Report output directory; overridable via the ZC_REPORT_DIR env var."""
    return os.environ.get(DEFAULT_REPORT_DIR_ENV, default)
