# models/report.py
from __future__ import annotations
import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from algebra.checks import CheckResult


class Verdict(str, Enum):
    """
    Outcome of a command. The string values are what reports print and
    what the JSON output carries.
    """

    passed = "pass"
    failed = "fail"
    undecided = "undecided"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "undecided": 3}[self.value]


class FailureRecord(BaseModel):
    """One failing identity on one basis tuple."""

    identity: str
    args: List[str] = Field(default_factory=list)
    difference: str


class Report(BaseModel):
    """
    What a command found: the verdict, the failing identities with their
    difference polynomials, and any witnesses in session-file notation.
    """

    command: str
    subject: str = ""
    verdict: Verdict
    checked: int = 0
    details: List[FailureRecord] = Field(default_factory=list)
    witnesses: Dict[str, Any] = Field(default_factory=dict)
    bound: Optional[int] = None
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def verdict_carries_evidence(self) -> "Report":
        if self.verdict is Verdict.failed and not any(d.difference != "0" for d in self.details):
            raise ValueError("a failing report needs at least one nonzero difference")
        if self.verdict is Verdict.undecided and self.bound is None:
            raise ValueError("an undecided report must carry the bound used")
        return self

    @classmethod
    def from_check(
        cls,
        command: str,
        subject: str,
        result: CheckResult,
        witnesses: Optional[Dict[str, Any]] = None,
        notes: Optional[List[str]] = None,
    ) -> "Report":
        details = [
            FailureRecord(identity=f.identity, args=list(f.args), difference=str(f.difference))
            for f in result.failures
        ]
        return cls(
            command=command,
            subject=subject,
            verdict=Verdict.passed if result.ok else Verdict.failed,
            checked=result.checked,
            details=details,
            witnesses=witnesses or {},
            bound=result.bound,
            notes=notes or [],
        )

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def identities(self) -> List[str]:
        out: List[str] = []
        for d in self.details:
            if d.identity not in out:
                out.append(d.identity)
        return out

    def to_dict(self) -> Dict[str, Any]:
        d = self.model_dump(mode="json")
        if d["bound"] is None:
            del d["bound"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_markdown(self) -> str:
        icon = {"pass": "✅", "fail": "❌", "undecided": "❔"}[self.verdict.value]
        lines = [f"# {self.command} {self.subject}".rstrip(), "", f"**Verdict:** {icon} {self.verdict.value}"]
        if self.bound is not None:
            lines.append(f"**Bound:** ∂-degree {self.bound}")
        lines.append(f"**Checked:** {self.checked}")
        if self.details:
            lines += ["", "| identity | arguments | difference |", "|---|---|---|"]
            for d in self.details:
                lines.append(f"| {d.identity} | {', '.join(d.args)} | `{d.difference}` |")
        if self.witnesses:
            lines += ["", "## Witnesses", "", "```json", json.dumps(self.witnesses, indent=2), "```"]
        for note in self.notes:
            lines.append(f"- {note}")
        return "\n".join(lines) + "\n"
