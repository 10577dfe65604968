"""Declarative Hamiltonian-cycle model over a grid.

The model owns the numbering of solver variables. Each directed edge gets a
choice variable (1..E); each directed edge also gets a preground activation
variable (E+1..2E) whose truth value is pinned per solve call. The degree,
coverage and connectivity constraints are enforced natively by the solver,
which reads the adjacency tables built here.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Sequence

from grid.grid import (
    DIRECTIONS,
    Coord,
    GridGraph,
    direction_index,
    is_adjacent,
)

logger = logging.getLogger(__name__)

Atom = Literal["head", "apple"]


class ModelError(Exception):
    """Base class for all model errors"""


class UnknownAtom(ModelError):
    pass


class ModelContractViolation(ModelError):
    pass


class NonAdjacent(ModelError):
    pass


class NotOnCycle(ModelError):
    pass


class UnknownEdge(ModelError):
    pass


class EdgeLit(NamedTuple):
    src: Coord
    dst: Coord

    def key(self) -> tuple[int, int, int]:
        return (self.src[0], self.src[1], direction_index(self.src, self.dst))


@dataclass(frozen=True)
class Objective:
    value: int
    # cycle cells from the head to the apple, both included
    marks: tuple[Coord, ...]


@dataclass
class ModelProgram:
    grid: GridGraph
    edges: list[EdgeLit]
    edge_var: dict[EdgeLit, int]
    # indexed by edge variable; slot 0 unused
    edge_src: list[int]
    edge_dst: list[int]
    # indexed by dense cell index; variables sorted by direction
    out_vars: list[list[int]]
    in_vars: list[list[int]]
    # preground values per edge variable; slot 0 unused
    activation: list[bool]
    heads: set[Coord] = field(default_factory=set)
    apples: set[Coord] = field(default_factory=set)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def var_of(self, edge: EdgeLit) -> int:
        try:
            return self.edge_var[(Coord(*edge[0]), Coord(*edge[1]))]
        except KeyError:
            raise UnknownEdge(f"{tuple(edge[0])} -> {tuple(edge[1])} is not a grid edge") from None

    def activation_var(self, edge: EdgeLit) -> int:
        return self.num_edges + self.var_of(edge)

    def lit(self, edge: EdgeLit, value: bool = True) -> int:
        v = self.var_of(edge)
        return v if value else -v

    def head(self) -> Coord | None:
        return self._single("head", self.heads)

    def apple(self) -> Coord | None:
        return self._single("apple", self.apples)

    @staticmethod
    def _single(atom: str, cells: set[Coord]) -> Coord | None:
        if len(cells) > 1:
            raise ModelContractViolation(f"{len(cells)} {atom} externals are true, at most one allowed")
        return next(iter(cells), None)

    def set_external(self, atom: Atom, cell: Coord, value: bool) -> None:
        if atom not in ("head", "apple"):
            raise UnknownAtom(f"unknown external atom {atom!r}")
        if not self.grid.contains(cell):
            raise UnknownAtom(f"{atom}({cell[0]},{cell[1]}) is outside the {self.grid.label} grid")
        cells = self.heads if atom == "head" else self.apples
        if value:
            cells.add(Coord(*cell))
        else:
            cells.discard(Coord(*cell))

    def set_activation(self, edge: EdgeLit, value: bool) -> None:
        self.activation[self.var_of(edge)] = value

    def reset_activation(self) -> None:
        self.activation = [False] * (self.num_edges + 1)


def build_model(g: GridGraph) -> ModelProgram:
    edges: list[EdgeLit] = []
    for c in sorted(g.cells()):
        for dx, dy in DIRECTIONS:
            d = Coord(c.x + dx, c.y + dy)
            if g.contains(d):
                edges.append(EdgeLit(c, d))

    edge_var = {e: i + 1 for i, e in enumerate(edges)}
    edge_src = [-1] + [g.cell_index(e.src) for e in edges]
    edge_dst = [-1] + [g.cell_index(e.dst) for e in edges]
    out_vars: list[list[int]] = [[] for _ in range(g.size)]
    in_vars: list[list[int]] = [[] for _ in range(g.size)]
    for var in range(1, len(edges) + 1):
        out_vars[edge_src[var]].append(var)
        in_vars[edge_dst[var]].append(var)

    logger.debug("built model for %s grid with %d directed edges", g.label, len(edges))
    return ModelProgram(
        grid=g,
        edges=edges,
        edge_var=edge_var,
        edge_src=edge_src,
        edge_dst=edge_dst,
        out_vars=out_vars,
        in_vars=in_vars,
        activation=[False] * (len(edges) + 1),
    )


def set_external(mp: ModelProgram, atom: Atom, cell: Coord, value: bool) -> None:
    mp.set_external(atom, cell, value)


def snake_edge_lits(snake: Sequence[Coord]) -> list[EdgeLit]:
    if not snake:
        raise ModelError("snake must contain at least one cell")
    out = []
    for a, b in zip(snake, snake[1:]):
        if not is_adjacent(a, b):
            raise NonAdjacent(f"snake cells {tuple(a)} and {tuple(b)} are not adjacent")
        out.append(EdgeLit(Coord(*a), Coord(*b)))
    return out


def cycle_edge_lits(cycle: Sequence[Coord]) -> list[EdgeLit]:
    return [EdgeLit(Coord(*a), Coord(*b)) for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1]))]


def objective_of(cycle: Sequence[Coord], head: Coord, apple: Coord) -> Objective:
    """Position of the apple along the cycle, counting the head as 1."""
    cycle = list(cycle)
    try:
        h = cycle.index(head)
        a = cycle.index(apple)
    except ValueError as exc:
        raise NotOnCycle(str(exc)) from None
    value = (a - h) % len(cycle) + 1
    marks = tuple(Coord(*cycle[(h + i) % len(cycle)]) for i in range(value))
    return Objective(value=value, marks=marks)
