"""ASCII and SVG pictures of a board, optionally with the planned cycle."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from jinja2 import Environment, FileSystemLoader

from bench.views import RenderSpec
from game.session import GameState
from grid.grid import Coord

TEMPLATES = Path(__file__).parent / "templates"

ARROWS = {(1, 0): ">", (-1, 0): "<", (0, 1): "v", (0, -1): "^"}
FILLS = {"@": "#2e7d32", "#": "#81c784", "A": "#e53935"}

_env = Environment(loader=FileSystemLoader(TEMPLATES), autoescape=True, trim_blocks=True, lstrip_blocks=True)


def _glyphs(state: GameState, cycle: Sequence[Coord] | None, spec: RenderSpec) -> dict[Coord, str]:
    out: dict[Coord, str] = {}
    if cycle and spec.show_cycle:
        for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
            out[Coord(*a)] = ARROWS[(b[0] - a[0], b[1] - a[1])]
    for c in state.snake[:-1]:
        out[Coord(*c)] = "#"
    out[Coord(*state.head)] = "@"
    if state.apple is not None:
        out[Coord(*state.apple)] = "A"
    return out


def render_board(state: GameState, cycle: Sequence[Coord] | None = None, spec: RenderSpec | None = None) -> bytes:
    """Row y=1 is drawn at the top."""
    spec = spec or RenderSpec()
    glyphs = _glyphs(state, cycle, spec)
    g = state.grid
    if spec.format == "ascii":
        lines = [
            " ".join(glyphs.get(Coord(x, y), ".") for x in range(1, g.n + 1))
            for y in range(1, g.m + 1)
        ]
        return ("\n".join(lines) + "\n").encode("utf-8")

    px = spec.cell_px
    cells = []
    for c in g.cells():
        glyph = glyphs.get(c, "")
        cells.append({
            "left": (c.x - 1) * px,
            "top": (c.y - 1) * px,
            "cx": (c.x - 1) * px + px // 2,
            "cy": (c.y - 1) * px + px // 2,
            "fill": FILLS.get(glyph, "#ffffff"),
            "glyph": glyph if glyph in FILLS else "",
        })
    cycle_points = ""
    if cycle and spec.show_cycle:
        cycle_points = " ".join(f"{(c[0] - 1) * px + px // 2},{(c[1] - 1) * px + px // 2}" for c in cycle)
    svg = _env.get_template("board.svg.j2").render(
        width=g.n * px,
        height=g.m * px,
        px=px,
        font_px=max(8, px * 2 // 3),
        cells=cells,
        cycle_points=cycle_points,
        title=f"{g.label} snake length {len(state.snake)}",
    )
    return svg.encode("utf-8")
