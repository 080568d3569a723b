# algebra/checks.py
"""
Outcome records for identity checks.

A check expands an identity on basis tuples and records the difference of the
two sides. Nonzero differences are failures; nothing is raised.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Set, Tuple

from algebra.cdmod import ModElement


@dataclass(frozen=True)
class Failure:
    identity: str
    args: Tuple[str, ...]
    difference: ModElement

    def __str__(self) -> str:
        return f"{self.identity} on ({', '.join(self.args)}): {self.difference}"


@dataclass
class CheckResult:
    """Failures of a named check, with an optional value produced on success."""

    name: str
    failures: List[Failure] = field(default_factory=list)
    checked: int = 0
    value: Any = None
    bound: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def record(self, identity: str, args: Sequence[str], difference: ModElement) -> None:
        self.checked += 1
        if not difference.is_zero():
            self.failures.append(Failure(identity, tuple(args), difference))

    def merge(self, other: "CheckResult") -> "CheckResult":
        self.failures.extend(other.failures)
        self.checked += other.checked
        return self

    def identities(self) -> Set[str]:
        return {f.identity for f in self.failures}

    def first(self) -> Optional[Failure]:
        return self.failures[0] if self.failures else None
