"""Grid graph primitives: coordinates, adjacency, cycle construction and validation.

Cells use 1-based coordinates (x, y) with 1 <= x <= n and 1 <= y <= m.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import networkx as nx

logger = logging.getLogger(__name__)


class GridError(Exception):
    """Base class for all grid errors"""


class DimensionError(GridError):
    pass


class OddGridError(GridError):
    """No Hamiltonian cycle exists when n * m is odd."""


class OutOfGrid(GridError):
    pass


class Coord(NamedTuple):
    x: int
    y: int


Path = list[Coord]
CyclePath = list[Coord]
Snake = list[Coord]

# Fixed direction order; ties between edges leaving one cell break on this index.
DIRECTIONS: tuple[tuple[int, int], ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


@dataclass(frozen=True)
class GridGraph:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise DimensionError(f"grid must be at least 2x2, got {self.n}x{self.m}")
        if (self.n * self.m) % 2:
            raise OddGridError(f"{self.n}x{self.m} grid has an odd number of cells")

    @property
    def size(self) -> int:
        return self.n * self.m

    @property
    def edge_count(self) -> int:
        return 2 * self.n * self.m - self.n - self.m

    @property
    def label(self) -> str:
        return f"{self.n}x{self.m}"

    def contains(self, c: Coord) -> bool:
        return 1 <= c[0] <= self.n and 1 <= c[1] <= self.m

    def require(self, c: Coord) -> Coord:
        if not self.contains(c):
            raise OutOfGrid(f"{tuple(c)} is outside the {self.label} grid")
        return Coord(*c)

    def cell_index(self, c: Coord) -> int:
        """Dense row-major index, internal to the solver."""
        return (c[1] - 1) * self.n + (c[0] - 1)

    def coord_of(self, index: int) -> Coord:
        return Coord(index % self.n + 1, index // self.n + 1)

    def cells(self) -> list[Coord]:
        """All cells in row-major order (y outer, x inner)."""
        return [Coord(x, y) for y in range(1, self.m + 1) for x in range(1, self.n + 1)]

    def edges(self) -> list[tuple[Coord, Coord]]:
        """Undirected edges, each listed once with the smaller cell first."""
        out = []
        for c in self.cells():
            for dx, dy in DIRECTIONS[:2]:
                d = Coord(c.x + dx, c.y + dy)
                if self.contains(d):
                    out.append((c, d))
        return out

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.cells())
        graph.add_edges_from(self.edges())
        return graph


@dataclass(frozen=True)
class HCValidation:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MirrorTransform:
    """Reflection applied by canonicalize. It is its own inverse."""
    n: int
    m: int
    flip_x: bool = False
    flip_y: bool = False

    @property
    def is_identity(self) -> bool:
        return not (self.flip_x or self.flip_y)

    def apply(self, c: Coord) -> Coord:
        x = self.n + 1 - c[0] if self.flip_x else c[0]
        y = self.m + 1 - c[1] if self.flip_y else c[1]
        return Coord(x, y)


def build_grid(n: int, m: int) -> GridGraph:
    return GridGraph(n, m)


def is_adjacent(a: Coord, b: Coord) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def manhattan(a: Coord, b: Coord) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def neighbors(g: GridGraph, v: Coord) -> frozenset[Coord]:
    g.require(v)
    out = set()
    for dx, dy in DIRECTIONS:
        c = Coord(v[0] + dx, v[1] + dy)
        if g.contains(c):
            out.add(c)
    return frozenset(out)


def direction_index(src: Coord, dst: Coord) -> int:
    return DIRECTIONS.index((dst[0] - src[0], dst[1] - src[1]))


def generic_hc(n: int, m: int) -> CyclePath:
    """Serpentine Hamiltonian cycle starting at (1, 1).

    For even n: up column 1, snake through columns 2..n over rows 2..m,
    then back along row 1. For odd n the grid is transposed.
    """
    build_grid(n, m)
    if n % 2:
        return [Coord(c.y, c.x) for c in generic_hc(m, n)]
    cycle = [Coord(1, y) for y in range(1, m + 1)]
    for x in range(2, n + 1):
        rows = range(m, 1, -1) if x % 2 == 0 else range(2, m + 1)
        cycle.extend(Coord(x, y) for y in rows)
    cycle.extend(Coord(x, 1) for x in range(n, 1, -1))
    return cycle


def validate_hc(g: GridGraph, p: Sequence[Coord]) -> HCValidation:
    if len(p) != g.size:
        return HCValidation(False, f"cycle has {len(p)} cells, grid has {g.size}")
    seen = set()
    for c in p:
        if not g.contains(c):
            return HCValidation(False, f"{tuple(c)} is outside the grid")
        if c in seen:
            return HCValidation(False, f"{tuple(c)} is visited twice")
        seen.add(c)
    for i, c in enumerate(p):
        nxt = p[(i + 1) % len(p)]
        if not is_adjacent(c, nxt):
            return HCValidation(False, f"{tuple(c)} -> {tuple(nxt)} is not a grid edge")
    return HCValidation(True)


def validate_general_snake(g: GridGraph, snake: Sequence[Coord], apple: Coord, p: Sequence[Coord]) -> bool:
    """Checks a path against the relaxed single-iteration problem.

    The path must start with the snake, end at its only visit of the apple,
    and any two visits of one cell (before the final position) must be at
    least len(snake) steps apart.
    """
    s = len(snake)
    if len(p) <= s or list(p[:s]) != list(snake):
        return False
    if any(not g.contains(c) for c in p):
        return False
    if any(not is_adjacent(a, b) for a, b in zip(p, p[1:])):
        return False
    if p[-1] != apple or sum(1 for c in p if c == apple) != 1:
        return False
    last_seen: dict[Coord, int] = {}
    for k, c in enumerate(p[:-1]):
        j = last_seen.get(c)
        if j is not None and k - j < s:
            return False
        last_seen[c] = k
    return True


def canonicalize(n: int, m: int, snake: Sequence[Coord], apple: Coord) -> tuple[Snake, Coord, MirrorTransform]:
    """Mirror the state so that the head lies in the low-x, low-y quadrant.

    A head exactly on a center line is not flipped on that axis.
    """
    head = snake[-1]
    t = MirrorTransform(
        n,
        m,
        flip_x=head[0] > (n + 1) // 2,
        flip_y=head[1] > (m + 1) // 2,
    )
    return apply_transform(t, snake), t.apply(apple), t


def apply_transform(t: MirrorTransform, p: Iterable[Coord]) -> Path:
    return [t.apply(c) for c in p]


def rotate_to(cycle: Sequence[Coord], start: Coord) -> CyclePath:
    try:
        i = list(cycle).index(start)
    except ValueError:
        raise GridError(f"{tuple(start)} is not on the cycle") from None
    return list(cycle[i:]) + list(cycle[:i])


def path_to_json(p: Iterable[Coord]) -> list[list[int]]:
    return [[c[0], c[1]] for c in p]


def path_from_json(raw: Iterable[Sequence[int]]) -> Path:
    out = []
    for item in raw:
        if len(item) != 2:
            raise GridError(f"expected [x, y], got {item!r}")
        out.append(Coord(int(item[0]), int(item[1])))
    return out
