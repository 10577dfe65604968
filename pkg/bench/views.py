from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterator, Literal

from pydantic import BaseModel, Field, field_validator

from game.session import GameConfig
from strategies.views import StrategyId


class BenchError(Exception):
    """Base class for all bench errors"""


class TooLarge(BenchError):
    pass


class NoCycle(BenchError):
    pass


class ReportIOError(BenchError):
    pass


CSV_COLUMNS = ["grid", "strategy", "games", "win_rate", "mean_total_steps", "mean_total_time_ms", "timeout_rate"]


def parse_grid_spec(raw: str) -> tuple[int, int]:
    """'6' and '6x6' both mean a 6 by 6 board."""
    parts = raw.lower().replace("×", "x").split("x")
    try:
        dims = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad grid {raw!r}, expected N or NxM") from None
    if len(dims) == 1:
        return dims[0], dims[0]
    if len(dims) == 2:
        return dims[0], dims[1]
    raise ValueError(f"bad grid {raw!r}, expected N or NxM")


def parse_strategies(raw: str | list) -> list[StrategyId]:
    items = raw.split(",") if isinstance(raw, str) else list(raw)
    if any(str(s).strip().lower() == "all" for s in items):
        return list(StrategyId)
    return [StrategyId.parse(s) for s in items if str(s).strip()]


class BenchConfig(BaseModel):
    grids: list[tuple[int, int]]
    games: int = Field(ge=1)
    strategies: list[StrategyId]
    timeout_ms: float = Field(default=60_000, gt=0)
    base_seed: int = Field(default=0, ge=0)
    out_dir: Path | None = None
    jobs: int = Field(default=1, ge=1)
    warm_start: bool = True
    canonicalize: bool = True
    # stop each game after this many apples
    max_iterations: int | None = Field(default=None, ge=1)

    @field_validator("grids", mode="before")
    @classmethod
    def _parse_grids(cls, v):
        if isinstance(v, str):
            v = v.split(",")
        out = [parse_grid_spec(g) if isinstance(g, str) else tuple(g) for g in v]
        if not out:
            raise ValueError("at least one grid is required")
        for n, m in out:
            if n < 2 or m < 2 or (n * m) % 2:
                raise ValueError(f"{n}x{m} is not an even board of at least 2x2")
        return out

    @field_validator("strategies", mode="before")
    @classmethod
    def _parse_strategies(cls, v):
        out = parse_strategies(v)
        if not out:
            raise ValueError("at least one strategy is required")
        return out

    def seeds(self) -> list[int]:
        return [self.base_seed + i for i in range(self.games)]

    def game_configs(self) -> Iterator[GameConfig]:
        """Every (grid, strategy, seed) triple in a fixed order."""
        for n, m in self.grids:
            for strategy in self.strategies:
                for seed in self.seeds():
                    yield GameConfig(
                        n=n,
                        m=m,
                        seed=seed,
                        timeout_ms=self.timeout_ms,
                        strategy=strategy,
                        warm_start=self.warm_start,
                        canonicalize=self.canonicalize,
                        max_iterations=self.max_iterations,
                    )


class RenderSpec(BaseModel):
    format: Literal["ascii", "svg"] = "ascii"
    cell_px: int = Field(default=24, ge=4)
    show_cycle: bool = True


@dataclass
class CellReport:
    grid: str
    strategy: str
    games: int
    wins: int
    win_rate: float
    mean_total_steps: float
    mean_total_time_ms: float
    mean_solve_ms: float
    timeout_rate: float
    # per iteration index (0 = first apple)
    step_curve: list[float] = field(default_factory=list)
    timeout_curve: list[float] = field(default_factory=list)
    naive_curve: list[float] = field(default_factory=list)

    def to_row(self) -> dict[str, Any]:
        return {
            "grid": self.grid,
            "strategy": self.strategy,
            "games": self.games,
            "win_rate": round(self.win_rate, 6),
            "mean_total_steps": round(self.mean_total_steps, 6),
            "mean_total_time_ms": round(self.mean_total_time_ms, 3),
            "timeout_rate": round(self.timeout_rate, 6),
        }

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class BenchReport:
    cells: list[CellReport]

    def cell(self, grid: str, strategy: str) -> CellReport:
        for c in self.cells:
            if c.grid == grid and c.strategy == strategy:
                return c
        raise KeyError(f"no results for {grid} / {strategy}")
