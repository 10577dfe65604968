"""Snake game loop driven by a cycle-producing strategy.

Each iteration places an apple uniformly on a free cell, asks the strategy
for a Hamiltonian cycle that starts with the snake's body, and moves the
snake along it until the apple is eaten.
"""
from __future__ import annotations

import logging
import time
from collections import deque
from typing import Callable, Sequence

import numpy as np

from game.session import GameConfig, GameResult, GameState, IterationRecord
from grid.grid import Coord, GridError, build_grid, is_adjacent, validate_hc
from model.ham_model import ModelError
from solver.views import SolverError
from strategies.strategies import Strategy
from strategies.views import RetrieveResult, StrategyError
from utils.logging_config import RESULT

logger = logging.getLogger(__name__)

START = Coord(1, 1)

Observer = Callable[[GameState, RetrieveResult, IterationRecord], None]


class GameError(Exception):
    """Base class for all game errors"""


class BoardFull(GameError):
    pass


class PathMismatch(GameError):
    pass


class AppleMissing(GameError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def place_apple(state: GameState, rng: np.random.Generator) -> Coord:
    """Uniform choice among free cells, enumerated in row-major order."""
    occupied = set(state.snake)
    free = [c for c in state.grid.cells() if c not in occupied]
    if not free:
        raise BoardFull("no free cell left for an apple")
    return free[int(rng.integers(len(free)))]


def follow_path(snake: Sequence[Coord], path: Sequence[Coord], apple: Coord) -> tuple[list[Coord], int]:
    """Moves the snake along path until it eats the apple.

    Returns the new body (one cell longer, head on the apple) and the number
    of steps taken.
    """
    s = len(snake)
    if list(path[:s]) != list(snake):
        raise PathMismatch("path does not start with the snake's body")
    try:
        target = list(path).index(apple, s)
    except ValueError:
        raise AppleMissing(f"apple {tuple(apple)} is not ahead of the head on the path") from None

    body = deque(snake)
    for cell in path[s: target + 1]:
        if not is_adjacent(body[-1], cell):
            raise PathMismatch(f"{tuple(body[-1])} -> {tuple(cell)} is not a single step")
        if cell != apple:
            body.popleft()
        body.append(cell)
    return list(body), target - (s - 1)


def run_game(cfg: GameConfig, strategy: Strategy, observer: Observer | None = None) -> GameResult:
    g = build_grid(cfg.n, cfg.m)
    rng = make_rng(cfg.seed)
    state = GameState(grid=g, snake=[START])
    records: list[IterationRecord] = []
    limit = cfg.max_iterations or g.size
    diagnostic = None
    started = time.perf_counter()

    while len(state.snake) < g.size and len(records) < limit:
        state.apple = place_apple(state, rng)
        state.iteration += 1
        try:
            strategy.assign_externals(state)
            try:
                result = strategy.retrieve(state)
            finally:
                strategy.release_externals()
            check = validate_hc(g, result.path)
            if not check:
                raise PathMismatch(f"strategy returned an invalid cycle: {check.reason}")
            snake, steps = follow_path(state.snake, result.path, state.apple)
        except (GameError, SolverError, StrategyError, ModelError, GridError) as exc:
            diagnostic = f"iteration {state.iteration}: {type(exc).__name__}: {exc}"
            logger.warning("game lost (%s, seed %d): %s", strategy.strategy_id, cfg.seed, diagnostic)
            break

        outcome = result.outcome
        stats = outcome.stats.to_dict() if outcome else {}
        stats["restricted_search"] = bool(outcome and outcome.restricted_search)
        record = IterationRecord(
            iteration=state.iteration,
            snake_len=len(state.snake),
            apple=state.apple,
            steps=steps,
            solve_ms=result.solve_ms,
            objective=result.objective,
            optimal=result.optimal,
            timeout=result.timed_out,
            stats=stats,
        )
        records.append(record)
        if observer is not None:
            observer(state, result, record)
        state = GameState(grid=g, snake=snake, steps=state.steps + steps, iteration=state.iteration)

    won = len(state.snake) == g.size
    if not won and diagnostic is None:
        diagnostic = f"stopped after {len(records)} iterations"
    result = GameResult(
        grid=cfg.grid_label,
        strategy=str(strategy.strategy_id),
        seed=cfg.seed,
        won=won,
        total_steps=state.steps,
        records=records,
        wall_ms=(time.perf_counter() - started) * 1000,
        diagnostic=diagnostic,
    )
    logger.log(
        RESULT, "%s %s seed=%d won=%s steps=%d iterations=%d%s",
        result.grid, result.strategy, cfg.seed, won, result.total_steps, len(records),
        "" if won else f" ({diagnostic})",
    )
    return result
