"""Violation lists shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    check: str
    where: str = ""
    detail: str = ""

    def __str__(self):
        parts = [self.check]
        if self.where:
            parts.append(f"at {self.where}")
        if self.detail:
            parts.append(f"({self.detail})")
        return " ".join(parts)


@dataclass
class Report:
    name: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, where: str = "", detail: str = "") -> None:
        self.violations.append(Violation(check, where, detail))

    def checks(self) -> set[str]:
        return {v.check for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "violations": [
                {"check": v.check, "where": v.where, "detail": v.detail}
                for v in self.violations
            ],
        }
