"""Per-game configuration, state and records."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from grid.grid import Coord, GridGraph
from strategies.views import StrategyId


class GameConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2)
    m: int = Field(ge=2)
    seed: int = Field(default=0, ge=0, lt=2**64)
    timeout_ms: float = Field(default=60_000, gt=0)
    strategy: StrategyId = StrategyId.NOGOOD
    canonicalize: bool = True
    warm_start: bool = True
    # safety cap on iterations; None means n*m
    max_iterations: int | None = Field(default=None, ge=1)

    @field_validator("strategy", mode="before")
    @classmethod
    def _parse_strategy(cls, v):
        return StrategyId.parse(v)

    @model_validator(mode="after")
    def _even_board(self):
        if (self.n * self.m) % 2:
            raise ValueError(f"{self.n}x{self.m} has an odd number of cells; no Hamiltonian cycle exists")
        return self

    @property
    def grid_label(self) -> str:
        return f"{self.n}x{self.m}"


@dataclass
class GameState:
    grid: GridGraph
    snake: list[Coord]
    apple: Coord | None = None
    steps: int = 0
    iteration: int = 0

    @property
    def head(self) -> Coord:
        return self.snake[-1]

    @property
    def tail(self) -> Coord:
        return self.snake[0]


@dataclass
class IterationRecord:
    iteration: int
    snake_len: int
    apple: Coord
    steps: int
    solve_ms: float
    objective: int
    optimal: bool
    timeout: bool
    stats: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "iter": self.iteration,
            "len": self.snake_len,
            "apple": [self.apple[0], self.apple[1]],
            "steps": self.steps,
            "solve_ms": round(self.solve_ms, 3),
            "objective": self.objective,
            "optimal": self.optimal,
            "timeout": self.timeout,
            "stats": self.stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class GameResult:
    grid: str
    strategy: str
    seed: int
    won: bool
    total_steps: int
    records: list[IterationRecord]
    wall_ms: float
    diagnostic: str | None = None

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def solve_ms(self) -> float:
        return sum(r.solve_ms for r in self.records)

    def summary(self) -> dict[str, Any]:
        return {
            "grid": self.grid,
            "strategy": self.strategy,
            "seed": self.seed,
            "won": self.won,
            "total_steps": self.total_steps,
            "iterations": self.iterations,
            "total_ms": round(self.wall_ms, 3),
            "solve_ms": round(self.solve_ms, 3),
            "timeouts": sum(1 for r in self.records if r.timeout),
            "diagnostic": self.diagnostic,
        }

    def to_dict(self) -> dict[str, Any]:
        out = self.summary()
        out["records"] = [r.to_dict() for r in self.records]
        return out

    def to_json(self) -> str:
        """Iteration records as JSONL, one line per iteration."""
        return "".join(r.to_json() + "\n" for r in self.records)

    def write_jsonl(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        return path

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "GameResult":
        records = [
            IterationRecord(
                iteration=r["iter"],
                snake_len=r["len"],
                apple=Coord(*r["apple"]),
                steps=r["steps"],
                solve_ms=r["solve_ms"],
                objective=r["objective"],
                optimal=r["optimal"],
                timeout=r["timeout"],
                stats=r.get("stats", {}),
            )
            for r in raw.get("records", [])
        ]
        return cls(
            grid=raw["grid"],
            strategy=raw["strategy"],
            seed=raw["seed"],
            won=raw["won"],
            total_steps=raw["total_steps"],
            records=records,
            wall_ms=raw.get("total_ms", 0.0),
            diagnostic=raw.get("diagnostic"),
        )
