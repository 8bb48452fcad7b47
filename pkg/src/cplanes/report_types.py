"""Shared types for verification reports."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class CheckStatus(Enum):
    """Outcome of a single check."""

    PASS = "PASS"
    FAIL = "FAIL"


@dataclass
class CheckResult:
    """A named comparison between an expected and an observed value."""

    name: str
    expected: str
    got: str
    status: CheckStatus
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "expected": self.expected,
            "got": self.got,
            "status": self.status.value,
        }
        if timings:
            data["elapsed"] = round(self.elapsed, 6)
        return data


def check(name: str, expected: object, got: object, ok: bool) -> CheckResult:
    """Build a CheckResult from a boolean outcome."""
    return CheckResult(
        name=name,
        expected=str(expected),
        got=str(got),
        status=CheckStatus.PASS if ok else CheckStatus.FAIL,
    )


@dataclass
class VerificationReport:
    """All checks run against one functional."""

    subject: list[str]
    hyperplane_class: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        return {
            "f": {"coeffs": self.subject},
            "class": self.hyperplane_class,
            "status": CheckStatus.PASS.value if self.passed else CheckStatus.FAIL.value,
            "checks": [c.to_dict(timings) for c in self.checks],
        }

    def __str__(self) -> str:
        """Format the report summary for display."""
        lines = [
            f"Verification of f = ({', '.join(self.subject)}) [{self.hyperplane_class}]",
            f"  Checks: {len(self.checks)}, failed: {len(self.failures)}",
        ]
        lines.extend(
            f"  FAIL {c.name}: expected {c.expected}, got {c.got}" for c in self.failures
        )
        return "\n".join(lines)
