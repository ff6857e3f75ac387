"""Expected-versus-actual records and their aggregation."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: float
    actual: float
    abs_error: float
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, name: str, expected: float, actual: float, tolerance: float) -> "CheckResult":
        """Build a result with ``abs_error = |expected - actual|``.

        A NaN anywhere makes the check fail, since ``nan <= tol`` is False.
        """
        abs_error = abs(expected - actual)
        return cls(name, expected, actual, abs_error, tolerance, bool(abs_error <= tolerance))

    @classmethod
    def errored(cls, name: str, exc: BaseException, expected: float = math.nan,
                tolerance: float = math.nan) -> "CheckResult":
        return cls(f"{name}:{type(exc).__name__}", expected, math.nan, math.nan, tolerance, False)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)
    wall_time_seconds: float = 0.0

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> int:
        return sum(not r.passed for r in self.results)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "results": [r.to_dict() for r in self.results],
            "total": self.total,
            "failures": self.failures,
            "wall_time_seconds": self.wall_time_seconds,
        }
