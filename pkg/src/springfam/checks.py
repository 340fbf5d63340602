from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    REPORTED = "reported"


@dataclass(frozen=True)
class Check:
    """One verified claim: an anchor string, a status and an optional witness."""

    anchor: str
    status: Status
    witness: Any = None

    @classmethod
    def of(cls, anchor: str, ok: bool, witness: Any = None) -> Check:
        return cls(anchor, Status.PASS if ok else Status.FAIL, None if ok else witness)

    @classmethod
    def reported(cls, anchor: str, witness: Any) -> Check:
        return cls(anchor, Status.REPORTED, witness)

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def to_json(self) -> dict:
        out = {"anchor": self.anchor, "status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class VerificationError(AssertionError):
    def __init__(self, check: Check) -> None:
        super().__init__(f"{check.anchor}: {check.witness}")
        self.check = check


def all_passed(checks: Iterable[Check]) -> bool:
    return not any(c.failed for c in checks)


def first_failure(checks: Iterable[Check]) -> Check | None:
    return next((c for c in checks if c.failed), None)
