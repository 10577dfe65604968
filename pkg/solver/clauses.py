from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum


class ClauseTag(StrEnum):
    STATIC = "static"
    LEARNED = "learned-global"
    GUARDED = "guarded"
    CALL = "call-scoped"


@dataclass(eq=False, slots=True)
class Clause:
    """Disjunction of signed-integer literals.

    lits[0] and lits[1] are the watched literals once the clause holds two or
    more literals.
    """
    lits: list[int]
    tag: ClauseTag
    guard: int = 0
    activity: float = 0.0
    last_used: int = 0
    deleted: bool = False

    def __len__(self) -> int:
        return len(self.lits)


@dataclass(eq=False)
class GuardLit:
    id: int
    released: bool = False


def normalize(lits: list[int]) -> list[int] | None:
    """Dedupes literals, keeping first-seen order; None for a tautology."""
    seen: set[int] = set()
    out = []
    for lit in lits:
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return out
