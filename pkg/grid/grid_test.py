import numpy as np
import pytest

from grid.grid import (
    Coord,
    DimensionError,
    GridError,
    MirrorTransform,
    OddGridError,
    OutOfGrid,
    apply_transform,
    build_grid,
    canonicalize,
    generic_hc,
    is_adjacent,
    manhattan,
    neighbors,
    path_from_json,
    path_to_json,
    rotate_to,
    validate_general_snake,
    validate_hc,
)

C = Coord


@pytest.mark.parametrize("n,m", [(2, 2), (4, 3), (3, 4), (6, 6), (8, 8), (5, 2)])
def test_edge_count_matches_networkx(n, m):
    g = build_grid(n, m)
    assert g.edge_count == 2 * n * m - n - m
    assert g.to_networkx().number_of_edges() == g.edge_count
    assert len(g.edges()) == g.edge_count


def test_build_grid_rejects_bad_dimensions():
    with pytest.raises(OddGridError):
        build_grid(3, 3)
    with pytest.raises(DimensionError):
        build_grid(1, 4)
    with pytest.raises(GridError):
        build_grid(0, 0)


def test_neighbors_of_corner_and_interior():
    g = build_grid(4, 4)
    assert neighbors(g, C(1, 1)) == {C(2, 1), C(1, 2)}
    assert len(neighbors(g, C(2, 3))) == 4
    with pytest.raises(OutOfGrid):
        neighbors(g, C(5, 1))


def test_cell_index_is_dense():
    g = build_grid(4, 6)
    assert [g.cell_index(c) for c in g.cells()] == list(range(g.size))
    assert all(g.coord_of(g.cell_index(c)) == c for c in g.cells())


def test_generic_hc_four_by_three():
    assert generic_hc(4, 3) == [
        C(1, 1), C(1, 2), C(1, 3), C(2, 3), C(2, 2), C(3, 2),
        C(3, 3), C(4, 3), C(4, 2), C(4, 1), C(3, 1), C(2, 1),
    ]


EVEN_BOARDS = [(n, m) for n in range(2, 17) for m in range(2, 17) if n * m % 2 == 0]


@pytest.mark.parametrize("n,m", EVEN_BOARDS)
def test_generic_hc_is_valid(n, m):
    g = build_grid(n, m)
    p = generic_hc(n, m)
    assert p[0] == C(1, 1)
    assert validate_hc(g, p)
    graph = g.to_networkx()
    assert all(graph.has_edge(a, b) for a, b in zip(p, p[1:] + p[:1]))


def test_generic_hc_last_cell_on_six_by_six():
    assert generic_hc(6, 6)[-1] == C(2, 1)


def test_generic_hc_odd_grid():
    with pytest.raises(OddGridError):
        generic_hc(3, 3)


def test_validate_hc_reports_missing_cells():
    g = build_grid(2, 2)
    result = validate_hc(g, [C(1, 1), C(1, 2), C(2, 2)])
    assert not result
    assert "3 cells" in result.reason


def test_validate_hc_rejects_non_adjacent_wrap():
    g = build_grid(2, 3)
    assert not validate_hc(g, [C(1, 1), C(1, 2), C(2, 2), C(2, 1), C(2, 3), C(1, 3)])


def test_general_snake_accepts_hc_prefix():
    g = build_grid(4, 4)
    cycle = generic_hc(4, 4)
    snake = cycle[:3]
    apple = cycle[7]
    assert validate_general_snake(g, snake, apple, cycle[:8])


def test_general_snake_rejects_early_revisit():
    g = build_grid(4, 4)
    snake = [C(1, 1), C(2, 1), C(2, 2)]
    p = snake + [C(2, 1), C(3, 1)]
    assert not validate_general_snake(g, snake, C(3, 1), p)


def test_general_snake_allows_spaced_revisit():
    g = build_grid(4, 4)
    snake = [C(1, 1), C(1, 2)]
    p = snake + [C(2, 2), C(2, 1), C(1, 1), C(1, 2), C(1, 3)]
    assert validate_general_snake(g, snake, C(1, 3), p)


def test_general_snake_rejects_apple_twice():
    g = build_grid(4, 4)
    snake = [C(1, 1)]
    p = [C(1, 1), C(2, 1), C(3, 1), C(2, 1)]
    assert not validate_general_snake(g, snake, C(2, 1), p)


def test_canonicalize_flips_far_head():
    snake, apple, t = canonicalize(6, 6, [C(5, 4), C(5, 5)], C(6, 1))
    assert snake == [C(2, 3), C(2, 2)]
    assert apple == C(1, 6)
    assert t.flip_x and t.flip_y


def test_canonicalize_keeps_center_line():
    snake, _, t = canonicalize(5, 4, [C(3, 2)], C(1, 1))
    assert snake == [C(3, 2)]
    assert t.is_identity


@pytest.mark.parametrize("n,m", [(4, 4), (6, 6), (5, 4), (6, 2)])
def test_canonical_head_in_first_quadrant(n, m):
    g = build_grid(n, m)
    for head in g.cells():
        snake, apple, t = canonicalize(n, m, [head], C(1, 1) if head != C(1, 1) else C(2, 1))
        assert snake[0].x <= (n + 1) // 2
        assert snake[0].y <= (m + 1) // 2
        assert apply_transform(t, snake) == [head]


def test_transform_maps_cycles_to_cycles():
    g = build_grid(6, 4)
    _, _, t = canonicalize(6, 4, [C(6, 4)], C(1, 1))
    assert validate_hc(g, apply_transform(t, generic_hc(6, 4)))


def test_rotate_to():
    cycle = generic_hc(2, 2)
    assert rotate_to(cycle, C(2, 2)) == [C(2, 2), C(2, 1), C(1, 1), C(1, 2)]
    with pytest.raises(GridError):
        rotate_to(cycle, C(3, 3))


def test_manhattan_and_json_helpers():
    assert manhattan(C(1, 1), C(4, 3)) == 5
    assert path_to_json([C(1, 2), C(2, 2)]) == [[1, 2], [2, 2]]
    assert path_from_json([[3, 1]]) == [C(3, 1)]
    with pytest.raises(GridError):
        path_from_json([[1, 2, 3]])


def test_canonicalize_round_trip_on_random_states():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n, m = EVEN_BOARDS[int(rng.integers(len(EVEN_BOARDS)))]
        base = generic_hc(n, m)
        flip = MirrorTransform(n, m, flip_x=bool(rng.integers(2)), flip_y=bool(rng.integers(2)))
        cycle = apply_transform(flip, rotate_to(base, base[int(rng.integers(n * m))]))
        k = int(rng.integers(1, n * m))
        snake, apple = cycle[:k], cycle[int(rng.integers(k, n * m))]

        canon, canon_apple, t = canonicalize(n, m, snake, apple)
        assert canon[-1].x <= (n + 1) // 2
        assert canon[-1].y <= (m + 1) // 2
        assert apply_transform(t, canon) == snake
        assert t.apply(canon_apple) == apple
        assert len(set(canon)) == k
        assert all(is_adjacent(a, b) for a, b in zip(canon, canon[1:]))
        assert canon_apple not in canon
