import xml.etree.ElementTree as ET

import pytest
from pydantic import ValidationError

from bench.render import render_board
from bench.views import RenderSpec
from game.session import GameState
from grid.grid import Coord, build_grid, generic_hc

C = Coord
SVG = "{http://www.w3.org/2000/svg}"


def two_by_two():
    return GameState(grid=build_grid(2, 2), snake=[C(1, 1)], apple=C(2, 2))


def test_ascii_board_without_cycle():
    out = render_board(two_by_two(), spec=RenderSpec(show_cycle=False)).decode()
    assert out == "@ .\n. A\n"


def test_ascii_board_draws_the_cycle():
    state = GameState(grid=build_grid(4, 2), snake=[C(1, 1), C(2, 1)], apple=C(4, 2))
    cycle = [C(1, 1), C(2, 1), C(3, 1), C(4, 1), C(4, 2), C(3, 2), C(2, 2), C(1, 2)]
    rows = render_board(state, cycle).decode().splitlines()
    assert rows == ["# @ > v", "^ < < A"]


def test_svg_is_well_formed():
    state = two_by_two()
    spec = RenderSpec(format="svg", cell_px=10)
    root = ET.fromstring(render_board(state, generic_hc(2, 2), spec))
    assert root.tag == f"{SVG}svg"
    assert root.get("width") == "20"
    rects = root.findall(f"{SVG}rect")
    # background plus one per cell
    assert len(rects) == 5
    assert {t.text for t in root.findall(f"{SVG}text")} == {"@", "A"}
    assert root.find(f"{SVG}polygon") is not None


def test_render_does_not_touch_the_state():
    state = two_by_two()
    render_board(state, generic_hc(2, 2), RenderSpec(format="svg"))
    assert state.snake == [C(1, 1)]
    assert state.apple == C(2, 2)


def test_render_spec_validation():
    with pytest.raises(ValidationError):
        RenderSpec(format="png")
    with pytest.raises(ValidationError):
        RenderSpec(cell_px=2)
