from __future__ import annotations

from enum import Enum
from typing import List

from pydantic import BaseModel, Field


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class CheckRecord(BaseModel):
    """One structured output line; no timings so records stay byte-stable."""

    check: str
    ref: str
    status: CheckStatus
    expected: str
    actual: str


class CheckResult(CheckRecord):
    tags: List[str] = Field(default_factory=list)
    elapsed_s: float = 0.0
    detail: str = ""

    def record(self) -> CheckRecord:
        return CheckRecord(
            check=self.check,
            ref=self.ref,
            status=self.status,
            expected=self.expected,
            actual=self.actual,
        )


class RunReport(BaseModel):
    """Verify-suite results in declared check order."""

    entries: List[CheckResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.status == CheckStatus.PASS for e in self.entries)

    @property
    def passed(self) -> int:
        return sum(1 for e in self.entries if e.status == CheckStatus.PASS)

    @property
    def failed(self) -> int:
        return len(self.entries) - self.passed

    def json_lines(self) -> List[str]:
        return [e.record().model_dump_json() for e in self.entries]
