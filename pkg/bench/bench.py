"""Runs many seeded games per (grid, strategy) and aggregates them."""
from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Iterator, Sequence

from tqdm import tqdm

from bench.report import aggregate, emit_report
from bench.views import BenchConfig, BenchReport, ReportIOError
from game.engine import run_game
from game.session import GameConfig, GameResult
from grid.grid import build_grid
from strategies.strategies import make_strategy
from utils.logging_config import RESULT

logger = logging.getLogger(__name__)

GAMES_FILE = "games.jsonl"


def play_one(cfg: GameConfig) -> dict[str, Any]:
    """Plays one game; any failure becomes a lost-game record."""
    try:
        strategy = make_strategy(
            cfg.strategy,
            build_grid(cfg.n, cfg.m),
            timeout_ms=cfg.timeout_ms,
            warm_start=cfg.warm_start,
            canonicalize=cfg.canonicalize,
        )
        try:
            return run_game(cfg, strategy).to_dict()
        finally:
            strategy.close()
    except Exception as exc:
        logger.error("game %s/%s seed=%d crashed: %s", cfg.grid_label, cfg.strategy, cfg.seed, exc)
        lost = GameResult(
            grid=cfg.grid_label,
            strategy=str(cfg.strategy),
            seed=cfg.seed,
            won=False,
            total_steps=0,
            records=[],
            wall_ms=0.0,
            diagnostic=f"{type(exc).__name__}: {exc}",
        )
        return lost.to_dict()


def _results_in_order(configs: Sequence[GameConfig], jobs: int) -> Iterator[dict[str, Any]]:
    if jobs == 1:
        for cfg in configs:
            yield play_one(cfg)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map yields in submission order
        yield from pool.map(play_one, configs)


def run_bench(cfg: BenchConfig, progress: bool = True) -> BenchReport:
    configs = list(cfg.game_configs())
    games: list[dict[str, Any]] = []
    out = None
    if cfg.out_dir is not None:
        try:
            Path(cfg.out_dir).mkdir(parents=True, exist_ok=True)
            out = (Path(cfg.out_dir) / GAMES_FILE).open("w", encoding="utf-8")
        except OSError as exc:
            raise ReportIOError(f"cannot write to {cfg.out_dir}: {exc}") from exc

    logger.info("bench: %d games on %d worker(s)", len(configs), cfg.jobs)
    try:
        with tqdm(total=len(configs), desc="games", unit="game", disable=not progress) as bar:
            for game in _results_in_order(configs, cfg.jobs):
                games.append(game)
                if out is not None:
                    out.write(json.dumps(game) + "\n")
                    out.flush()
                bar.set_postfix_str(f"{game['grid']} {game['strategy']} won={game['won']}")
                bar.update()
    finally:
        if out is not None:
            out.close()

    report = aggregate(games)
    for cell in report.cells:
        logger.log(
            RESULT, "%s %s: won %d/%d, %.1f steps, timeouts %.1f%%",
            cell.grid, cell.strategy, cell.wins, cell.games, cell.mean_total_steps, cell.timeout_rate * 100,
        )
    if cfg.out_dir is not None:
        emit_report(report, cfg.out_dir)
    return report
