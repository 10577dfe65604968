import numpy as np
import pytest

from bench.oracle import brute_force_oracle
from game.engine import run_game
from game.session import GameConfig, GameState
from grid.grid import Coord, MirrorTransform, apply_transform, build_grid, generic_hc, rotate_to, validate_hc
from strategies.strategies import (
    STRATEGIES,
    NaiveStrategy,
    NogoodStrategy,
    make_strategy,
    naive_next_path,
)
from strategies.views import ContractViolation, StrategyId

C = Coord


def play_with_oracle(n, m, strategy_id, seed, **kwargs):
    """Plays a game and checks every iteration against the exhaustive oracle."""
    g = build_grid(n, m)
    cfg = GameConfig(n=n, m=m, seed=seed, strategy=strategy_id, timeout_ms=10_000, **kwargs)
    strategy = make_strategy(cfg.strategy, g, timeout_ms=cfg.timeout_ms,
                             warm_start=cfg.warm_start, canonicalize=cfg.canonicalize)
    checked = []

    def observer(state, result, record):
        assert validate_hc(g, result.path)
        assert result.path[: len(state.snake)] == state.snake
        expected = brute_force_oracle(g, state.snake, state.apple).objective
        checked.append((record.objective, expected, record.optimal))

    try:
        game = run_game(cfg, strategy, observer=observer)
    finally:
        strategy.close()
    return game, checked


@pytest.mark.parametrize("strategy_id", StrategyId.solving())
@pytest.mark.parametrize("n, m, seed", [(4, 4, 1), (4, 2, 2), (2, 6, 4)])
def test_backends_match_the_oracle(strategy_id, n, m, seed):
    game, checked = play_with_oracle(n, m, strategy_id, seed)
    assert game.won, game.diagnostic
    assert len(checked) == n * m - 1
    for objective, expected, optimal in checked:
        assert optimal
        assert objective == expected


@pytest.mark.parametrize("strategy_id", [StrategyId.ONESHOT, StrategyId.ASSUME])
def test_without_warm_start_or_mirroring(strategy_id):
    game, checked = play_with_oracle(4, 4, strategy_id, 9, warm_start=False, canonicalize=False)
    assert game.won, game.diagnostic
    assert all(obj == exp for obj, exp, _ in checked)


def test_naive_is_never_better_than_the_oracle():
    game, checked = play_with_oracle(4, 4, StrategyId.NAIVE, 2)
    assert game.won
    assert all(obj >= exp for obj, exp, _ in checked)
    assert not any(optimal for _, _, optimal in checked)


def test_learned_total_never_shrinks():
    g = build_grid(4, 4)
    strategy = make_strategy(StrategyId.PREGROUND, g, timeout_ms=10_000)
    totals = []
    run_game(GameConfig(n=4, m=4, seed=6), strategy,
             observer=lambda *_: totals.append(strategy.learned_total()))
    assert totals == sorted(totals)
    strategy.close()
    assert strategy.learned_total() == 0


def test_nogood_needs_warm_start():
    with pytest.raises(ContractViolation):
        NogoodStrategy(build_grid(4, 4), warm_start=False)


def test_retrieve_without_apple():
    strategy = make_strategy("assume", build_grid(4, 4))
    with pytest.raises(ContractViolation):
        strategy.retrieve(GameState(grid=build_grid(4, 4), snake=[C(1, 1)]))


def test_retrieve_rotates_to_the_tail():
    g = build_grid(4, 4)
    strategy = make_strategy("adhoc", g, timeout_ms=10_000)
    state = GameState(grid=g, snake=[C(3, 1), C(4, 1), C(4, 2)], apple=C(3, 2))
    result = strategy.retrieve(state)
    assert result.path[:3] == state.snake
    assert result.objective == 2
    assert strategy.stored == result.path


def test_naive_next_path_follows_the_serpentine():
    g = build_grid(4, 4)
    cycle = generic_hc(4, 4)
    state = GameState(grid=g, snake=cycle[2:5], apple=cycle[8])
    path = naive_next_path(g, state)
    assert path[0] == cycle[2]
    assert path[:3] == cycle[2:5]


def test_naive_rejects_off_cycle_snake():
    g = build_grid(4, 4)
    strategy = NaiveStrategy(g)
    # the serpentine runs (2,1) -> (1,1), never the other way
    state = GameState(grid=g, snake=[C(1, 1), C(2, 1)], apple=C(4, 4))
    with pytest.raises(ContractViolation):
        strategy.retrieve(state)


def test_make_strategy_covers_every_id():
    g = build_grid(4, 4)
    assert set(STRATEGIES) == set(StrategyId)
    for sid in StrategyId:
        s = make_strategy(sid.value.upper(), g)
        assert s.strategy_id is sid
        s.close()
    with pytest.raises(ValueError):
        make_strategy("greedy", g)


def random_states(n, m, count, seed):
    """Snakes cut from a randomly mirrored and rotated serpentine."""
    g = build_grid(n, m)
    rng = np.random.default_rng(seed)
    base = generic_hc(n, m)
    for _ in range(count):
        flip = MirrorTransform(n, m, flip_x=bool(rng.integers(2)), flip_y=bool(rng.integers(2)))
        cycle = apply_transform(flip, rotate_to(base, base[int(rng.integers(n * m))]))
        k = int(rng.integers(1, n * m))
        yield GameState(grid=g, snake=cycle[:k], apple=cycle[int(rng.integers(k, n * m))])


def check_backends_agree(states):
    for state in states:
        objectives = {}
        for sid in StrategyId.solving():
            strategy = make_strategy(sid, state.grid, timeout_ms=30_000)
            try:
                result = strategy.retrieve(state)
            finally:
                strategy.close()
            assert validate_hc(state.grid, result.path)
            assert result.path[: len(state.snake)] == state.snake
            assert result.optimal, f"{sid} did not prove optimality"
            objectives[sid] = result.objective
        assert len(set(objectives.values())) == 1, objectives


def test_backends_agree_on_sampled_states():
    check_backends_agree(random_states(6, 6, 8, seed=21))


@pytest.mark.slow
def test_backends_agree_on_many_sampled_states():
    check_backends_agree(random_states(6, 6, 100, seed=22))


def test_adhoc_uses_a_fresh_guard_each_iteration(monkeypatch):
    g = build_grid(4, 4)
    strategy = make_strategy(StrategyId.ADHOC, g, timeout_ms=10_000)
    ids = []
    new_guard = strategy.solver.new_guard

    def recording_new_guard():
        guard = new_guard()
        ids.append(guard.id)
        return guard

    monkeypatch.setattr(strategy.solver, "new_guard", recording_new_guard)
    game = run_game(GameConfig(n=4, m=4, seed=3), strategy)
    assert game.won
    assert len(ids) == 15
    assert all(a < b for a, b in zip(ids, ids[1:]))


def test_preground_switches_everything_off_after_each_call():
    g = build_grid(4, 4)
    strategy = make_strategy(StrategyId.PREGROUND, g, timeout_ms=10_000)

    def observer(state, result, record):
        assert not any(strategy.model.activation)
        assert not strategy.model.heads
        assert not strategy.model.apples

    assert run_game(GameConfig(n=4, m=4, seed=5), strategy, observer=observer).won


def test_assume_keeps_the_clause_database_fixed():
    g = build_grid(6, 6)
    strategy = make_strategy(StrategyId.ASSUME, g, timeout_ms=30_000)
    permanent = []

    def observer(state, result, record):
        permanent.append(strategy.solver.clause_count() - strategy.solver.learned_count())

    game = run_game(GameConfig(n=6, m=6, seed=8, max_iterations=12), strategy, observer=observer)
    assert len(game.records) == 12
    assert len(set(permanent)) == 1


def test_oneshot_starts_without_learned_clauses():
    g = build_grid(6, 6)
    strategy = make_strategy(StrategyId.ONESHOT, g, timeout_ms=30_000)

    def observer(state, result, record):
        stats = result.outcome.stats
        # everything the solver knows was learned in this very call
        assert stats.learned_total == stats.learned
        assert strategy.learned_total() == stats.learned_total

    run_game(GameConfig(n=6, m=6, seed=8, max_iterations=12), strategy, observer=observer)
