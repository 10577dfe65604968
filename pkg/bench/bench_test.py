import csv
import json

import numpy as np
import pytest
from pydantic import ValidationError

from bench.bench import GAMES_FILE, play_one, run_bench
from bench.report import aggregate, load_records, load_report_csv, naive_expected_steps
from bench.views import CSV_COLUMNS, BenchConfig, parse_grid_spec, parse_strategies
from game.session import GameConfig
from strategies.views import StrategyId
from utils.logging_config import RESULT


def small_config(out_dir, **kwargs):
    defaults = dict(grids="4", games=2, strategies="naive,assume", timeout_ms=10_000, base_seed=10, out_dir=out_dir)
    defaults.update(kwargs)
    return BenchConfig(**defaults)


def test_parse_grid_spec():
    assert parse_grid_spec("6") == (6, 6)
    assert parse_grid_spec("4x6") == (4, 6)
    with pytest.raises(ValueError):
        parse_grid_spec("6x")
    with pytest.raises(ValueError):
        parse_grid_spec("2x2x2")


def test_parse_strategies():
    assert parse_strategies("all") == list(StrategyId)
    assert parse_strategies("naive, pre-ground") == [StrategyId.NAIVE, StrategyId.PREGROUND]


def test_bench_config_orders_games():
    cfg = BenchConfig(grids="2,4", games=3, strategies="naive,nogood", base_seed=5)
    configs = list(cfg.game_configs())
    assert len(configs) == 12
    assert [(c.n, c.strategy, c.seed) for c in configs[:4]] == [
        (2, StrategyId.NAIVE, 5), (2, StrategyId.NAIVE, 6), (2, StrategyId.NAIVE, 7), (2, StrategyId.NOGOOD, 5),
    ]
    with pytest.raises(ValidationError):
        BenchConfig(grids="3", games=1, strategies="all")
    with pytest.raises(ValidationError):
        BenchConfig(grids="4", games=0, strategies="all")


def test_naive_expected_steps():
    assert naive_expected_steps(4, 4, 1) == 8.0
    assert naive_expected_steps(4, 4, 15) == 1.0


def test_play_one_never_raises():
    record = play_one(GameConfig(n=4, m=4, strategy="nogood", warm_start=False))
    assert record["won"] is False
    assert "ContractViolation" in record["diagnostic"]
    assert record["records"] == []


def test_run_bench_writes_games_and_report(tmp_path):
    report = run_bench(small_config(tmp_path), progress=False)
    assert {(c.grid, c.strategy) for c in report.cells} == {("4x4", "naive"), ("4x4", "assume")}
    for cell in report.cells:
        assert cell.games == 2
        assert cell.win_rate == 1.0
        assert cell.timeout_rate == 0.0
        assert len(cell.step_curve) == 15
        assert len(cell.naive_curve) == 15

    games = load_records(tmp_path / GAMES_FILE)
    assert [(g["strategy"], g["seed"]) for g in games] == [
        ("naive", 10), ("naive", 11), ("assume", 10), ("assume", 11),
    ]

    with (tmp_path / "report.csv").open(newline="") as fh:
        assert csv.DictReader(fh).fieldnames == CSV_COLUMNS
    rows = load_report_csv(tmp_path / "report.csv")
    again = aggregate(games)
    assert [c.to_row() for c in again.cells] == rows
    assert (tmp_path / "report.jsonl").read_text().count("\n") == 2


def test_report_lookup(tmp_path):
    report = run_bench(small_config(tmp_path, strategies="naive"), progress=False)
    assert report.cell("4x4", "naive").wins == 2
    with pytest.raises(KeyError):
        report.cell("6x6", "naive")


def test_parallel_run_matches_sequential(tmp_path):
    seq = run_bench(small_config(tmp_path / "seq", strategies="naive"), progress=False)
    par = run_bench(small_config(tmp_path / "par", strategies="naive", jobs=2), progress=False)
    assert [c.mean_total_steps for c in seq.cells] == [c.mean_total_steps for c in par.cells]
    seq_games = load_records(tmp_path / "seq" / GAMES_FILE)
    par_games = load_records(tmp_path / "par" / GAMES_FILE)
    assert [(g["seed"], g["total_steps"]) for g in seq_games] == [(g["seed"], g["total_steps"]) for g in par_games]


@pytest.mark.slow
def test_all_strategies_on_six_by_six(tmp_path):
    report = run_bench(small_config(tmp_path, grids="6", games=2, strategies="all", timeout_ms=60_000), progress=False)
    assert len(report.cells) == len(StrategyId)
    assert all(c.win_rate == 1.0 for c in report.cells)


def without_timing(line):
    game = json.loads(line)
    for key in ("total_ms", "solve_ms"):
        game.pop(key)
    for record in game["records"]:
        record.pop("solve_ms")
    return json.dumps(game)


def test_same_config_gives_same_games(tmp_path):
    runs = []
    for name in ("first", "second"):
        run_bench(small_config(tmp_path / name, strategies="all", games=2), progress=False)
        runs.append((tmp_path / name / GAMES_FILE).read_text().splitlines())
    assert len(runs[0]) == 2 * len(StrategyId)
    assert [without_timing(line) for line in runs[0]] == [without_timing(line) for line in runs[1]]


def test_max_iterations_reaches_every_game(tmp_path):
    report = run_bench(small_config(tmp_path, strategies="assume", max_iterations=4), progress=False)
    cell = report.cell("4x4", "assume")
    assert cell.wins == 0
    assert len(cell.step_curve) == 4
    assert all(len(g["records"]) == 4 for g in load_records(tmp_path / GAMES_FILE))


def test_summaries_are_logged_at_result_level(tmp_path, caplog):
    with caplog.at_level(RESULT):
        run_bench(small_config(tmp_path, strategies="naive"), progress=False)
    messages = [r.getMessage() for r in caplog.records if r.levelno == RESULT]
    assert sum("seed=" in m for m in messages) == 2
    assert any(m.startswith("4x4 naive: won 2/2") for m in messages)


@pytest.mark.slow
def test_six_by_six_step_counts(tmp_path):
    cfg = small_config(tmp_path, grids="6", games=100, strategies="all", timeout_ms=60_000, base_seed=0, jobs=4)
    report = run_bench(cfg, progress=False)
    naive_total = sum(naive_expected_steps(6, 6, k) for k in range(1, 6 * 6 - 1))
    for cell in report.cells:
        assert cell.win_rate == 1.0
        if cell.strategy == "naive":
            assert cell.mean_total_steps == pytest.approx(naive_total, rel=0.15)
        else:
            assert cell.mean_total_steps == pytest.approx(212, rel=0.10)


@pytest.mark.slow
def test_multi_shot_times_out_less_than_one_shot(tmp_path):
    cfg = small_config(
        tmp_path, grids="10", games=30, strategies=[s.value for s in StrategyId.solving()],
        timeout_ms=100, base_seed=0, max_iterations=10,
    )
    report = run_bench(cfg, progress=False)
    oneshot = report.cell("10x10", "oneshot")
    if oneshot.timeout_curve[0] < 0.3:
        pytest.skip("first solves are too fast on this machine to compare timeout rates")
    baseline = np.mean(oneshot.timeout_curve[2:10])
    for sid in (StrategyId.ADHOC, StrategyId.PREGROUND, StrategyId.ASSUME, StrategyId.NOGOOD):
        cell = report.cell("10x10", sid.value)
        assert np.mean(cell.timeout_curve[2:10]) < baseline, sid
