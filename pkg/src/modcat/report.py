"""Pass/fail reports shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    deviation: float | None = None
    detail: str = ""
    counterexample: Any = None

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.deviation is not None:
            d["deviation"] = float(self.deviation)
        if self.detail:
            d["detail"] = self.detail
        if self.counterexample is not None:
            d["counterexample"] = _jsonable(self.counterexample)
        return d


@dataclass
class ValidationReport:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, passed: bool, deviation: float | None = None,
            detail: str = "", counterexample: Any = None) -> Check:
        c = Check(name, bool(passed), deviation, detail, counterexample)
        self.checks.append(c)
        return c

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.deviation, c.detail, c.counterexample))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            **({"data": _jsonable(self.data)} if self.data else {}),
        }

    def format(self) -> str:
        lines = [f"== {self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            line = f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}"
            if c.deviation is not None:
                line += f"  (dev {c.deviation:.3e})"
            if c.detail:
                line += f"  {c.detail}"
            if c.counterexample is not None and not c.passed:
                line += f"  counterexample={_jsonable(c.counterexample)}"
            lines.append(line)
        return "\n".join(lines)


def _jsonable(x):
    import numpy as np

    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if hasattr(x, "to_json"):
        return x.to_json()
    return x
