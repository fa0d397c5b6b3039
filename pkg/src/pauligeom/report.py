"""Pass/fail check collections shared by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    clause: str
    ok: bool
    expected: Any = None
    measured: Any = None
    informational: bool = False

    def as_dict(self) -> dict:
        d = {"clause": self.clause, "status": "info" if self.informational else ("pass" if self.ok else "fail")}
        if self.expected is not None:
            d["expected"] = _plain(self.expected)
        if self.measured is not None:
            d["measured"] = _plain(self.measured)
        return d


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, float):
        # round-off noise is not reproducible digit for digit
        return 0.0 if abs(x) < 1e-12 else float(f"{x:.3e}")
    if hasattr(x, "item"):
        return x.item()
    return x


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)
    seconds: Optional[float] = None

    def check(self, clause: str, ok: Optional[bool] = None, expected=None, measured=None) -> bool:
        """Record a check; with ``ok`` omitted it passes iff ``expected == measured``."""
        if ok is None:
            ok = expected == measured
        self.checks.append(Check(clause, bool(ok), expected, measured))
        return bool(ok)

    def info(self, clause: str, measured=None, expected=None) -> None:
        self.checks.append(Check(clause, True, expected, measured, informational=True))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.clause, c.ok, c.expected, c.measured, c.informational))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def as_dict(self, timings: bool = False) -> dict:
        d = {"suite": self.name, "passed": self.ok, "checks": [c.as_dict() for c in self.checks]}
        if timings and self.seconds is not None:
            d["seconds"] = round(self.seconds, 3)
        return d

    def as_text(self, timings: bool = False) -> str:
        lines = [f"== {self.name}: {'PASS' if self.ok else 'FAIL'}"
                 + (f" ({self.seconds:.2f} s)" if timings and self.seconds is not None else "")]
        for c in self.checks:
            status = "info" if c.informational else ("pass" if c.ok else "FAIL")
            extra = ""
            if c.expected is not None or c.measured is not None:
                extra = f"  expected={_plain(c.expected)!r} measured={_plain(c.measured)!r}"
            lines.append(f"  [{status}] {c.clause}{extra}")
        return "\n".join(lines)
