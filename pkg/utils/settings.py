import os
from pathlib import Path

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from bench.views import RenderSpec, parse_grid_spec, parse_strategies
from strategies.views import StrategyId

load_dotenv()

ROOT = Path(__file__).parent.parent
PROFILE_YAML = ROOT / "config" / "profiles.yaml"
PROFILE_ENV = "SNAKE_PROFILE"


class SettingsError(Exception):
    pass


class GameDefaults(BaseModel):
    grid: tuple[int, int] = (6, 6)
    strategy: StrategyId = StrategyId.NOGOOD
    seed: int = Field(default=0, ge=0)
    canonicalize: bool = True
    warm_start: bool = True

    @field_validator("grid", mode="before")
    @classmethod
    def _grid(cls, v):
        return parse_grid_spec(str(v)) if not isinstance(v, (list, tuple)) else tuple(v)

    @field_validator("strategy", mode="before")
    @classmethod
    def _strategy(cls, v):
        return StrategyId.parse(v)


class SolverDefaults(BaseModel):
    timeout_ms: float = Field(default=60_000, gt=0)


class BenchDefaults(BaseModel):
    grids: list[str] = ["4", "6", "8"]
    games: int = Field(default=10, ge=1)
    strategies: list[StrategyId] = list(StrategyId)
    base_seed: int = Field(default=0, ge=0)
    jobs: int = Field(default=1, ge=1)
    out_dir: Path = Path("runs/bench")

    @field_validator("grids", mode="before")
    @classmethod
    def _grids(cls, v):
        items = v.split(",") if isinstance(v, str) else v
        return [str(g).strip() for g in items]

    @field_validator("strategies", mode="before")
    @classmethod
    def _strategies(cls, v):
        return parse_strategies(v)


class Profile(BaseModel):
    game: GameDefaults = GameDefaults()
    solver: SolverDefaults = SolverDefaults()
    bench: BenchDefaults = BenchDefaults()
    render: RenderSpec = RenderSpec()


def load_profile(path: str | Path | None = None) -> Profile:
    """Reads the YAML profile; SNAKE_PROFILE overrides the bundled file."""
    path = Path(path or os.getenv(PROFILE_ENV) or PROFILE_YAML)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except OSError as exc:
        raise SettingsError(f"cannot read profile {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise SettingsError(f"profile {path} is not valid YAML: {exc}") from exc
    try:
        return Profile.model_validate(raw)
    except ValidationError as exc:
        raise SettingsError(f"profile {path} is invalid: {exc}") from exc
