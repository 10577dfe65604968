from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import TYPE_CHECKING, Callable, Sequence

from grid.grid import Coord
from model.ham_model import EdgeLit
from solver.clauses import GuardLit

if TYPE_CHECKING:
    from solver.solver import SearchContext


class SolverError(Exception):
    """Base class for all solver errors"""


class Unsat(SolverError):
    pass


class NoModelBeforeDeadline(SolverError):
    pass


class GuardReleased(SolverError):
    pass


class NotInCallback(SolverError):
    pass


class InvalidCycle(SolverError):
    pass


Assumption = tuple[EdgeLit | GuardLit, bool]


@dataclass(frozen=True)
class Model:
    """One emitted answer: a full cycle read from the anchor cell."""
    cycle: list[Coord]
    objective: int | None
    dummy: bool
    number: int


OnModel = Callable[[Model, "SearchContext"], "bool | None"]


@dataclass
class SolveOptions:
    assumptions: Sequence[Assumption] = field(default_factory=list)
    on_model: OnModel | None = None
    deadline_ms: float = 60_000
    bounding: bool = True

    def __post_init__(self):
        if self.deadline_ms <= 0:
            raise ValueError(f"deadline_ms must be positive, got {self.deadline_ms}")


@dataclass
class SolveStats:
    decisions: int = 0
    conflicts: int = 0
    propagations: int = 0
    learned: int = 0
    learned_total: int = 0
    models: int = 0
    restarts: int = 0
    clauses: int = 0

    def add(self, other: "SolveStats") -> None:
        self.decisions += other.decisions
        self.conflicts += other.conflicts
        self.propagations += other.propagations
        self.learned += other.learned
        self.models += other.models
        self.restarts += other.restarts
        self.learned_total = other.learned_total
        self.clauses = other.clauses

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass
class SolveOutcome:
    incumbent: list[Coord] | None
    objective: int | None
    optimal_proven: bool
    timed_out: bool
    stats: SolveStats
    restricted_search: bool = False
    models: list[int | None] = field(default_factory=list)
    first_model_dummy: bool = False


@dataclass(frozen=True)
class WarmStart:
    cycle: tuple[Coord, ...]
    edges: frozenset[int]
    # successor edge variable per dense cell index
    succ_var: tuple[int, ...]
