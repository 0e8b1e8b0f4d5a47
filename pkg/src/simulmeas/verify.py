"""Check every registered protocol against its closed-form metrics."""

import csv
from dataclasses import dataclass

from .protocols import APPROX_TOL, CLOSED_FORM_TOL, PROTOCOL_IDS, build_named_protocol

METRIC_FIELDS = (
    ("guess", "guess_probability"),
    ("class", "class_guess_probability"),
    ("info", "mutual_information_bits"),
)


@dataclass(frozen=True)
class Check:
    protocol: str
    metric: str
    expected: float
    computed: float
    tolerance: float
    approximate: bool

    @property
    def passed(self):
        return abs(self.computed - self.expected) <= self.tolerance


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def overall(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]


def check_protocol(proto, tol=None, approx_tol=None):
    computed = proto.evaluate()
    out = []
    for short, attr in METRIC_FIELDS:
        expected = getattr(proto.expected, attr)
        if expected is None:
            continue
        approximate = short in proto.approximate
        if approximate:
            t = approx_tol if approx_tol is not None else proto.tolerance(short)
        else:
            t = tol if tol is not None else proto.tolerance(short)
        out.append(Check(proto.id, short, float(expected), float(getattr(computed, attr)), t, approximate))
    return out


def run_verification(protocols=None, tol=None, approx_tol=None):
    """Evaluate each protocol (default: all fixed registry entries)."""
    if protocols is None:
        protocols = [build_named_protocol(i) for i in PROTOCOL_IDS]
    checks = []
    for proto in protocols:
        checks.extend(check_protocol(proto, tol, approx_tol))
    return VerificationReport(tuple(checks))


def format_report(report):
    lines = [f"{'protocol':<18}{'metric':<8}{'expected':>12}{'computed':>12}{'tolerance':>11}  result"]
    for c in report.checks:
        flag = "PASS" if c.passed else "FAIL"
        note = " (approx)" if c.approximate else ""
        lines.append(
            f"{c.protocol:<18}{c.metric:<8}{c.expected:>12.6f}{c.computed:>12.6f}{c.tolerance:>11.0e}  {flag}{note}"
        )
    n_ok = sum(c.passed for c in report.checks)
    lines.append(f"{n_ok}/{len(report.checks)} checks passed")
    return "\n".join(lines)


def write_report_csv(report, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["protocol", "metric", "expected", "computed", "tolerance", "passed"])
        for c in report.checks:
            w.writerow([c.protocol, c.metric, repr(c.expected), repr(c.computed), repr(c.tolerance), int(c.passed)])


__all__ = [
    "APPROX_TOL",
    "CLOSED_FORM_TOL",
    "Check",
    "VerificationReport",
    "check_protocol",
    "format_report",
    "run_verification",
    "write_report_csv",
]
