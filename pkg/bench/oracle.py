"""Exhaustive reference solver for small boards."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from bench.views import NoCycle, TooLarge
from grid.grid import Coord, GridGraph, is_adjacent, manhattan, neighbors

logger = logging.getLogger(__name__)

MAX_CELLS = 20


@dataclass(frozen=True)
class OracleResult:
    objective: int
    witness: list[Coord]


def brute_force_oracle(g: GridGraph, snake: Sequence[Coord], apple: Coord) -> OracleResult:
    """Minimum apple position over every Hamiltonian cycle extending the snake.

    Plain backtracking from the head; the only pruning is the incumbent bound.
    """
    if g.size > MAX_CELLS:
        raise TooLarge(f"{g.label} has {g.size} cells, the oracle handles at most {MAX_CELLS}")
    snake = [Coord(*c) for c in snake]
    apple = Coord(*apple)
    if apple in snake or not g.contains(apple) or any(not g.contains(c) for c in snake):
        raise NoCycle("apple and snake must be distinct cells inside the grid")
    if len(set(snake)) != len(snake) or any(not is_adjacent(a, b) for a, b in zip(snake, snake[1:])):
        raise NoCycle("snake body is not a simple path")

    adj = {c: sorted(neighbors(g, c)) for c in g.cells()}
    path = list(snake)
    visited = set(snake)
    best: list[int | None] = [None]
    witness: list[list[Coord]] = [[]]
    head_index = len(snake) - 1
    tail = snake[0]

    def extend(apple_pos: int | None) -> None:
        if len(path) == g.size:
            if is_adjacent(path[-1], tail) and (best[0] is None or apple_pos < best[0]):
                best[0] = apple_pos
                witness[0] = list(path)
            return
        if best[0] is not None:
            if apple_pos is not None and apple_pos >= best[0]:
                return
            if apple_pos is None and len(path) - head_index + manhattan(path[-1], apple) >= best[0]:
                return
        for nxt in adj[path[-1]]:
            if nxt in visited:
                continue
            visited.add(nxt)
            path.append(nxt)
            pos = apple_pos
            if pos is None and nxt == apple:
                pos = len(path) - head_index
            extend(pos)
            path.pop()
            visited.discard(nxt)

    extend(None)
    if best[0] is None:
        raise NoCycle("no Hamiltonian cycle extends this snake")
    logger.debug("oracle on %s: objective %d", g.label, best[0])
    return OracleResult(objective=best[0], witness=witness[0])
