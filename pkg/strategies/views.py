from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from grid.grid import Coord
from solver.views import SolveOutcome


class StrategyError(Exception):
    """Base class for all strategy errors"""


class ContractViolation(StrategyError):
    pass


class StrategyId(StrEnum):
    ONESHOT = "oneshot"
    ADHOC = "adhoc"
    PREGROUND = "preground"
    ASSUME = "assume"
    NOGOOD = "nogood"
    NAIVE = "naive"

    @classmethod
    def parse(cls, raw: "str | StrategyId") -> "StrategyId":
        if isinstance(raw, cls):
            return raw
        key = str(raw).strip().lower().replace("-", "").replace("_", "")
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {raw!r}, expected one of: {choices}") from None

    @classmethod
    def solving(cls) -> list["StrategyId"]:
        return [s for s in cls if s is not cls.NAIVE]


@dataclass
class RetrieveResult:
    path: list[Coord]
    objective: int
    solve_ms: float
    outcome: SolveOutcome | None = None

    @property
    def optimal(self) -> bool:
        return bool(self.outcome and self.outcome.optimal_proven)

    @property
    def timed_out(self) -> bool:
        return bool(self.outcome and self.outcome.timed_out)
