"""Check results shared by the audit operations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CheckResult:
    """One inequality check: both sides are always recorded.

    `applicable` is False for vacuous cases (precondition of the audited
    statement not met); such checks count as passed.
    """

    name: str
    passed: bool
    lhs: object
    rhs: object
    applicable: bool = True


def _number_payload(x) -> object:
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator, "float": float(x)}
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    return str(x)


def check_payload(c: CheckResult) -> dict:
    return {
        "name": c.name,
        "pass": bool(c.passed),
        "lhs": _number_payload(c.lhs),
        "rhs": _number_payload(c.rhs),
        "applicable": bool(c.applicable),
    }


def all_pass(checks) -> bool:
    return all(c.passed for c in checks)
