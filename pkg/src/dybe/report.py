"""Verification reports."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    identity: str
    operands: list
    param: str = ""
    failures: list = field(default_factory=list)
    sample: list | None = None
    seed: int | None = None
    seconds: float = 0.0
    note: str = ""

    @property
    def status(self) -> str:
        return "fail" if self.failures else "pass"

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        ops = ", ".join(self.operands)
        tail = f" ({len(self.failures)} mismatches)" if self.failures else ""
        return f"{self.identity}[{ops}] at {self.param}: {self.status}{tail}"


def _names(mods) -> list:
    return [getattr(m, "name", str(m)) for m in mods]


def compare(identity: str, mods, param, lhs, rhs, limit: int = 20) -> VerificationReport:
    """Report on the exact equality of two BlockMatrices."""
    diffs = lhs.diff(rhs)
    failures = [
        {"block": list(lhs.weights()[r]), "row": r, "col": c, "lhs": a, "rhs": b}
        for r, c, a, b in diffs[:limit]
    ]
    return VerificationReport(identity, _names(mods), str(param), failures)


def merge(identity: str, mods, param, reports) -> VerificationReport:
    failures = []
    for rep in reports:
        for f in rep.failures:
            failures.append(dict(f, part=rep.identity))
    return VerificationReport(identity, _names(mods), str(param), failures)
