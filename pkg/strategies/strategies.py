"""Ways of re-deriving the next Hamiltonian cycle as the snake grows.

All solving strategies work on the mirrored (canonical) state, warm-start the
solver with the cycle followed in the previous iteration, and hand back a
cycle in the original frame that starts at the snake's tail. They differ in
how the snake's body is imposed on the solver:

  oneshot    fresh model and solver per call, body as permanent facts
  adhoc      one solver, body as a guarded batch retired after the call
  preground  one solver, body through activation literals
  assume     one solver, body as assumptions
  nogood     one solver, body injected as clauses once the warm start shows up
  naive      no solving; follow one fixed cycle forever
"""
from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from typing import ClassVar

from game.session import GameState
from grid.grid import (
    Coord,
    CyclePath,
    GridGraph,
    MirrorTransform,
    apply_transform,
    canonicalize,
    generic_hc,
    rotate_to,
)
from model.ham_model import ModelProgram, build_model, objective_of, snake_edge_lits
from solver.solver import SearchContext, Solver
from solver.views import Model, SolveOptions, SolveOutcome
from strategies.views import ContractViolation, RetrieveResult, StrategyId

logger = logging.getLogger(__name__)


class Strategy(ABC):
    """Produces, per iteration, a Hamiltonian cycle starting at the snake's tail."""
    strategy_id: ClassVar[StrategyId]

    def __init__(
        self,
        grid: GridGraph,
        timeout_ms: float = 60_000,
        warm_start: bool = True,
        canonicalize: bool = True,
    ):
        self.grid = grid
        self.timeout_ms = timeout_ms
        self.warm_start = warm_start
        self.canonicalize = canonicalize
        # last followed cycle, original frame
        self.stored: CyclePath | None = None
        self._transform = MirrorTransform(grid.n, grid.m)
        self._snake: list[Coord] | None = None
        self._apple: Coord | None = None

    def assign_externals(self, state: GameState) -> None:
        if state.apple is None:
            raise ContractViolation("no apple placed for this iteration")
        if self.canonicalize:
            snake, apple, t = canonicalize(self.grid.n, self.grid.m, state.snake, state.apple)
        else:
            snake, apple, t = list(state.snake), state.apple, MirrorTransform(self.grid.n, self.grid.m)
        self._snake, self._apple, self._transform = snake, apple, t
        self._set_externals(snake[-1], apple, True)

    def release_externals(self) -> None:
        if self._snake is None:
            return
        self._set_externals(self._snake[-1], self._apple, False)
        self._snake = None
        self._apple = None

    def _set_externals(self, head: Coord, apple: Coord, value: bool) -> None:
        """Switches head and apple on the persistent model. Strategies that
        keep no model between calls skip this; oneshot sets them on every
        fresh model it builds."""

    @abstractmethod
    def retrieve(self, state: GameState) -> RetrieveResult:
        """Returns the cycle to follow from the current state."""

    def learned_total(self) -> int:
        return 0

    def close(self) -> None:
        self.stored = None


class SolvingStrategy(Strategy):
    """Canonicalizes, warm-starts and solves; subclasses impose the body."""

    def retrieve(self, state: GameState) -> RetrieveResult:
        owns_externals = self._snake is None
        if owns_externals:
            self.assign_externals(state)
        try:
            warm = None
            if self.warm_start:
                warm = apply_transform(self._transform, self.stored or generic_hc(self.grid.n, self.grid.m))
            started = time.perf_counter()
            outcome = self._solve(self._snake, self._apple, warm)
            solve_ms = (time.perf_counter() - started) * 1000
        finally:
            if owns_externals:
                self.release_externals()

        path = rotate_to(apply_transform(self._transform, outcome.incumbent), state.tail)
        self.stored = path
        objective = objective_of(path, state.head, state.apple).value
        logger.debug(
            "%s: len=%d objective=%d optimal=%s %.1f ms",
            self.strategy_id, len(state.snake), objective, outcome.optimal_proven, solve_ms,
        )
        return RetrieveResult(path=path, objective=objective, solve_ms=solve_ms, outcome=outcome)

    @abstractmethod
    def _solve(self, snake: list[Coord], apple: Coord, warm: CyclePath | None) -> SolveOutcome:
        """Solves the canonical state and returns the solver outcome."""

    def _options(self, **kwargs) -> SolveOptions:
        return SolveOptions(deadline_ms=self.timeout_ms, **kwargs)

    @staticmethod
    def _prime(solver: Solver, warm: CyclePath | None) -> None:
        if warm is None:
            solver.clear_warm_start()
        else:
            solver.set_warm_start(warm)


class OneShotStrategy(SolvingStrategy):
    strategy_id = StrategyId.ONESHOT

    def __init__(self, grid: GridGraph, **kwargs):
        super().__init__(grid, **kwargs)
        self._last_learned = 0

    def _solve(self, snake, apple, warm):
        model = build_model(self.grid)
        model.set_external("head", snake[-1], True)
        model.set_external("apple", apple, True)
        solver = Solver(model)
        for e in snake_edge_lits(snake):
            solver.add_fact(e)
        self._prime(solver, warm)
        try:
            return solver.solve(self._options())
        finally:
            self._last_learned = solver.learned_count()

    def learned_total(self) -> int:
        return self._last_learned


class _PersistentStrategy(SolvingStrategy):
    """One model and solver for the whole game."""

    def __init__(self, grid: GridGraph, **kwargs):
        super().__init__(grid, **kwargs)
        self.model: ModelProgram = build_model(grid)
        self.solver: Solver | None = Solver(self.model)

    def _set_externals(self, head, apple, value):
        self.model.set_external("head", head, value)
        self.model.set_external("apple", apple, value)

    def learned_total(self) -> int:
        return self.solver.learned_count() if self.solver is not None else 0

    def close(self) -> None:
        super().close()
        self.solver = None


class AdHocStrategy(_PersistentStrategy):
    strategy_id = StrategyId.ADHOC

    def _solve(self, snake, apple, warm):
        guard = self.solver.new_guard()
        self.solver.add_guarded_constraints(guard, snake_edge_lits(snake))
        self._prime(self.solver, warm)
        try:
            return self.solver.solve(self._options(assumptions=[(guard, True)]))
        finally:
            self.solver.release_guard(guard)
            self.solver.cleanup()


class PregroundStrategy(_PersistentStrategy):
    strategy_id = StrategyId.PREGROUND

    def _solve(self, snake, apple, warm):
        edges = snake_edge_lits(snake)
        for e in edges:
            self.solver.set_activation(e, True)
        self._prime(self.solver, warm)
        try:
            return self.solver.solve(self._options())
        finally:
            for e in edges:
                self.solver.set_activation(e, False)


class AssumeStrategy(_PersistentStrategy):
    strategy_id = StrategyId.ASSUME

    def _solve(self, snake, apple, warm):
        assumptions = [(e, True) for e in snake_edge_lits(snake)]
        self._prime(self.solver, warm)
        return self.solver.solve(self._options(assumptions=assumptions))


class NogoodStrategy(_PersistentStrategy):
    strategy_id = StrategyId.NOGOOD

    def __init__(self, grid: GridGraph, **kwargs):
        super().__init__(grid, **kwargs)
        if not self.warm_start:
            raise ContractViolation("the nogood strategy needs a warm start to recognise its first model")

    def _solve(self, snake, apple, warm):
        edges = snake_edge_lits(snake)

        def on_model(model: Model, ctx: SearchContext) -> None:
            if model.number == 1 and not model.dummy:
                raise ContractViolation("first model is not the warm-start cycle")
            if model.dummy:
                for e in edges:
                    ctx.add_clause([(e, True)])

        self._prime(self.solver, warm)
        return self.solver.solve(self._options(on_model=on_model))


class NaiveStrategy(Strategy):
    """Follows the serpentine cycle forever; never solves."""
    strategy_id = StrategyId.NAIVE

    def retrieve(self, state: GameState) -> RetrieveResult:
        path = naive_next_path(self.grid, state, self.stored)
        if path[: len(state.snake)] != list(state.snake):
            raise ContractViolation("snake is not a subpath of the fixed cycle")
        self.stored = path
        objective = objective_of(path, state.head, state.apple).value
        return RetrieveResult(path=path, objective=objective, solve_ms=0.0)


def naive_next_path(grid: GridGraph, state: GameState, stored: CyclePath | None = None) -> CyclePath:
    return rotate_to(stored or generic_hc(grid.n, grid.m), state.tail)


STRATEGIES: dict[StrategyId, type[Strategy]] = {
    cls.strategy_id: cls
    for cls in (OneShotStrategy, AdHocStrategy, PregroundStrategy, AssumeStrategy, NogoodStrategy, NaiveStrategy)
}


def make_strategy(
    strategy_id: StrategyId | str,
    grid: GridGraph,
    timeout_ms: float = 60_000,
    warm_start: bool = True,
    canonicalize: bool = True,
) -> Strategy:
    cls = STRATEGIES[StrategyId.parse(strategy_id)]
    return cls(grid, timeout_ms=timeout_ms, warm_start=warm_start, canonicalize=canonicalize)
