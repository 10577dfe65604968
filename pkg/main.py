"""
Snake solver CLI

Plays Snake by re-solving a minimal Hamiltonian cycle after every apple, and
benchmarks the ways of feeding the snake's body to the incremental solver.

Usage:
    snake play --grid 6x6 --strategy nogood --seed 7 --timeout-ms 60000
    snake play --grid 4x4 --strategy assume --render svg --out runs/demo
    snake bench --grids 4,6 --games 20 --strategies all --timeout-ms 60000 --out runs/bench --jobs 4
    snake oracle --grid 4x4 --state state.json
"""

import argparse
import sys
from pathlib import Path

from pydantic import ValidationError

from bench.bench import run_bench
from bench.oracle import brute_force_oracle
from bench.render import render_board
from bench.views import BenchConfig, BenchError, parse_grid_spec
from game.engine import run_game
from game.session import GameConfig
from grid.grid import GridError, build_grid, path_from_json, path_to_json
from strategies.strategies import make_strategy
from strategies.views import StrategyError, StrategyId
from utils.json_parser import JsonParsingError, parse_json_object
from utils.logging_config import setup_logging
from utils.settings import SettingsError, load_profile
from utils.utils import get_run_folder, log_error, log_json_block, log_step, render_table

EXIT_OK = 0
EXIT_LOST = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snake", description="Win Snake with minimal Hamiltonian cycles")
    parser.add_argument("--profile", help="YAML profile (default: config/profiles.yaml or $SNAKE_PROFILE)")
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="play one game")
    play.add_argument("--grid", help="board as NxM")
    play.add_argument("--strategy", help="one of: " + ", ".join(s.value for s in StrategyId))
    play.add_argument("--seed", type=int)
    play.add_argument("--timeout-ms", type=float)
    play.add_argument("--render", choices=["ascii", "svg"], help="write one frame per iteration")
    play.add_argument("--out", type=Path, help="output folder for frames and the iteration log")
    play.add_argument("--no-warmstart", action="store_true", help="do not seed the solver with the previous cycle")
    play.add_argument("--no-canonicalize", action="store_true", help="solve in the original frame")

    bench = sub.add_parser("bench", help="run many seeded games per grid and strategy")
    bench.add_argument("--grids", help="comma separated, e.g. 4,6,8 or 4x6")
    bench.add_argument("--games", type=int)
    bench.add_argument("--strategies", help="comma separated or 'all'")
    bench.add_argument("--timeout-ms", type=float)
    bench.add_argument("--seed", type=int, help="base seed; game i uses seed+i")
    bench.add_argument("--out", type=Path)
    bench.add_argument("--jobs", type=int)
    bench.add_argument("--no-warmstart", action="store_true")
    bench.add_argument("--no-progress", action="store_true")

    oracle = sub.add_parser("oracle", help="exhaustively solve one small state")
    oracle.add_argument("--grid", help="board as NxM (defaults to the grid in the state file)")
    oracle.add_argument("--state", type=Path, required=True, help='JSON: {"grid":[n,m],"snake":[[x,y],...],"apple":[x,y]}')
    return parser


def _given(value, default):
    return default if value is None else value


def cmd_play(args, profile) -> int:
    n, m = parse_grid_spec(args.grid) if args.grid else profile.game.grid
    cfg = GameConfig(
        n=n,
        m=m,
        seed=_given(args.seed, profile.game.seed),
        timeout_ms=_given(args.timeout_ms, profile.solver.timeout_ms),
        strategy=args.strategy or profile.game.strategy,
        warm_start=profile.game.warm_start and not args.no_warmstart,
        canonicalize=profile.game.canonicalize and not args.no_canonicalize,
    )
    strategy = make_strategy(
        cfg.strategy, build_grid(n, m),
        timeout_ms=cfg.timeout_ms, warm_start=cfg.warm_start, canonicalize=cfg.canonicalize,
    )
    out_dir = args.out or (get_run_folder() if args.render else None)
    observer = None
    if args.render:
        spec = profile.render.model_copy(update={"format": args.render})
        suffix = "txt" if spec.format == "ascii" else "svg"
        out_dir.mkdir(parents=True, exist_ok=True)

        def observer(state, result, record):
            frame = out_dir / f"frame_{record.iteration:04d}.{suffix}"
            frame.write_bytes(render_board(state, result.path, spec))

    log_step(f"Playing {cfg.grid_label} with {cfg.strategy} (seed {cfg.seed})", symbol="🐍")
    try:
        result = run_game(cfg, strategy, observer=observer)
    finally:
        strategy.close()

    if out_dir is not None:
        result.write_jsonl(Path(out_dir) / "iterations.jsonl")
    log_json_block("Game", {k: v for k, v in result.summary().items() if v is not None})
    if not result.won:
        log_error("Game lost", result.diagnostic)
        return EXIT_LOST
    return EXIT_OK


def cmd_bench(args, profile) -> int:
    defaults = profile.bench
    cfg = BenchConfig(
        grids=args.grids or defaults.grids,
        games=_given(args.games, defaults.games),
        strategies=args.strategies or defaults.strategies,
        timeout_ms=_given(args.timeout_ms, profile.solver.timeout_ms),
        base_seed=_given(args.seed, defaults.base_seed),
        out_dir=args.out or defaults.out_dir,
        jobs=_given(args.jobs, defaults.jobs),
        warm_start=profile.game.warm_start and not args.no_warmstart,
        canonicalize=profile.game.canonicalize,
    )
    log_step(f"Benchmark: {len(cfg.grids)} grid(s) x {len(cfg.strategies)} strategies x {cfg.games} games", symbol="📊")
    report = run_bench(cfg, progress=not args.no_progress)
    render_table(report)
    log_step(f"Results in {cfg.out_dir}", symbol="📁")
    return EXIT_OK


def cmd_oracle(args, profile) -> int:
    try:
        raw = parse_json_object(args.state.read_text(encoding="utf-8"), required_keys=["snake", "apple"])
    except OSError as exc:
        raise BenchError(f"cannot read {args.state}: {exc}") from exc
    if args.grid:
        n, m = parse_grid_spec(args.grid)
    elif "grid" in raw:
        n, m = raw["grid"]
    else:
        raise BenchError("no grid given on the command line or in the state file")
    g = build_grid(n, m)
    snake = path_from_json(raw["snake"])
    apple = path_from_json([raw["apple"]])[0]
    result = brute_force_oracle(g, snake, apple)
    log_json_block("Oracle", {"grid": g.label, "objective": result.objective, "witness": path_to_json(result.witness)})
    return EXIT_OK


COMMANDS = {"play": cmd_play, "bench": cmd_bench, "oracle": cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    try:
        profile = load_profile(args.profile)
        return COMMANDS[args.command](args, profile)
    except (ValidationError, ValueError, SettingsError, GridError, JsonParsingError) as exc:
        log_error("Invalid input", exc)
        return EXIT_USAGE
    except (BenchError, StrategyError) as exc:
        log_error(f"{args.command} failed", exc)
        return EXIT_LOST


if __name__ == "__main__":
    sys.exit(main())
