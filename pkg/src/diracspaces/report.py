"""Pass/fail bookkeeping for invariant checks."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: object = None
    detail: str = ""


@dataclass
class ValidationReport:
    """Ordered list of named checks; ``ok`` when every check passed."""

    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, witness=None, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), None if ok else witness, detail))
        return bool(ok)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __bool__(self) -> bool:
        return self.ok
