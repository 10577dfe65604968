"""Incremental search for minimal Hamiltonian cycles on a grid model.

A single Solver instance survives across many solve calls. Between calls it
keeps its clause database: static clauses, guarded batches, and the subtour
clauses learned during search. Every call starts from an empty assignment,
pins activation literals, guards and assumptions at level 0, then runs a
depth-first branch-and-bound that grows the cycle from the head.

Literals are signed integers. Variables 1..E are directed edges, E+1..2E are
preground activations, and guard variables are allocated after 2E.
"""
from __future__ import annotations

import logging
import time
from collections import defaultdict
from typing import Iterable, Sequence

from grid.grid import Coord, validate_hc
from model.ham_model import EdgeLit, ModelContractViolation, ModelProgram, cycle_edge_lits
from solver.clauses import Clause, ClauseTag, GuardLit, normalize
from solver.views import (
    Assumption,
    GuardReleased,
    InvalidCycle,
    Model,
    NoModelBeforeDeadline,
    NotInCallback,
    SolveOptions,
    SolveOutcome,
    SolveStats,
    Unsat,
    WarmStart,
)

logger = logging.getLogger(__name__)

TRUE = 1
FALSE = -1
UNSET = 0

DEADLINE_CHECK_EVERY = 1024
LEARNED_CAP = 100_000
# wider cuts are not worth keeping
CUT_CLAUSE_MAX = 16

# undo marker for the edge that closed the full cycle
_CLOSED = "closed"


class _DeadlineReached(Exception):
    pass


class SearchContext:
    """Handle given to on_model callbacks; clauses added here last for the
    rest of the current call only."""

    def __init__(self, solver: "Solver"):
        self._solver = solver
        self.active = False
        self.injected: list[list[int]] = []

    def add_clause(self, lits: Iterable[tuple[EdgeLit, bool]]) -> None:
        if not self.active:
            raise NotInCallback("clauses can only be added from inside an on_model callback")
        self.injected.append([self._solver.model.lit(e, v) for e, v in lits])


class Solver:
    def __init__(self, model: ModelProgram, learned_cap: int = LEARNED_CAP):
        self.model = model
        self.learned_cap = learned_cap
        g = model.grid
        self._n_cells = g.size
        self._E = model.num_edges
        self._num_vars = 2 * self._E
        self._xy = [g.coord_of(i) for i in range(g.size)]
        self._rev = [0] * (self._E + 1)
        for var, e in enumerate(model.edges, start=1):
            self._rev[var] = model.var_of(EdgeLit(e.dst, e.src))

        self._value = [UNSET] * (self._num_vars + 1)
        self._level = [0] * (self._num_vars + 1)
        self._watches: defaultdict[int, list[Clause]] = defaultdict(list)
        self._units: list[Clause] = []
        self._clauses: list[Clause] = []
        self._learned: list[Clause] = []
        self._learned_keys: dict[frozenset[int], Clause] = {}
        self._guards: dict[int, GuardLit] = {}
        self._warm: WarmStart | None = None
        self._tick = 0

        self.stats_total = SolveStats()
        self._stats = SolveStats()
        self._reset_search_state()

        # activation rules: an active edge must be taken
        for var in range(1, self._E + 1):
            self._add_clause([-(self._E + var), var], ClauseTag.STATIC)

    # ------------------------------------------------------------------
    # clause database
    # ------------------------------------------------------------------

    def add_fact(self, edge: EdgeLit, value: bool = True) -> None:
        self._add_clause([self.model.lit(edge, value)], ClauseTag.STATIC)

    def new_guard(self) -> GuardLit:
        self._num_vars += 1
        self._value.append(UNSET)
        self._level.append(0)
        guard = GuardLit(self._num_vars)
        self._guards[guard.id] = guard
        return guard

    def add_guarded_constraints(self, guard: GuardLit, edges: Iterable[EdgeLit]) -> None:
        """Adds (not guard or edge) for every edge."""
        if guard.released:
            raise GuardReleased(f"guard {guard.id} was already released")
        for e in edges:
            self._add_clause([-guard.id, self.model.lit(e)], ClauseTag.GUARDED, guard=guard.id)

    def release_guard(self, guard: GuardLit) -> None:
        guard.released = True

    def cleanup(self) -> int:
        """Physically removes clauses of released guards. Returns how many."""
        released = {gid for gid, g in self._guards.items() if g.released}
        if not released:
            return 0
        removed = 0
        for bucket in (self._clauses, self._units):
            keep = []
            for c in bucket:
                if c.guard in released:
                    c.deleted = True
                    removed += 1
                else:
                    keep.append(c)
            bucket[:] = keep
        for gid in released:
            self._watches.pop(-gid, None)
            self._watches.pop(gid, None)
            del self._guards[gid]
        for lit in list(self._watches):
            self._watches[lit] = [c for c in self._watches[lit] if not c.deleted]
        logger.debug("cleanup removed %d guarded clauses", removed)
        return removed

    def set_activation(self, edge: EdgeLit, value: bool) -> None:
        self.model.set_activation(edge, value)

    def set_warm_start(self, cycle: Sequence[Coord]) -> None:
        g = self.model.grid
        check = validate_hc(g, cycle)
        if not check:
            raise InvalidCycle(check.reason)
        succ_var = [0] * self._n_cells
        edges = set()
        for e in cycle_edge_lits(cycle):
            var = self.model.var_of(e)
            succ_var[g.cell_index(e.src)] = var
            edges.add(var)
        self._warm = WarmStart(tuple(Coord(*c) for c in cycle), frozenset(edges), tuple(succ_var))

    def clear_warm_start(self) -> None:
        self._warm = None

    def clause_count(self) -> int:
        return len(self._clauses) + len(self._units) + len(self._learned)

    def learned_count(self) -> int:
        return len(self._learned)

    def _add_clause(self, lits: list[int], tag: ClauseTag, guard: int = 0) -> Clause | None:
        lits = normalize(lits)
        if lits is None:
            return None
        if not lits:
            raise ValueError("empty clause")
        c = Clause(lits, tag, guard=guard)
        if len(lits) == 1:
            self._units.append(c)
        else:
            self._watch(c)
            if tag is ClauseTag.LEARNED:
                self._learned.append(c)
            else:
                self._clauses.append(c)
        return c

    def _watch(self, c: Clause) -> None:
        self._watches[c.lits[0]].append(c)
        self._watches[c.lits[1]].append(c)

    def _lit_value(self, lit: int) -> int:
        v = self._value[abs(lit)]
        return v if lit > 0 else -v

    def _order_for_watch(self, lits: list[int]) -> None:
        def key(lit: int) -> tuple[int, int]:
            if self._lit_value(lit) == FALSE:
                return (1, -self._level[abs(lit)])
            return (0, 0)
        lits.sort(key=key)

    # ------------------------------------------------------------------
    # solve
    # ------------------------------------------------------------------

    def solve(self, options: SolveOptions | None = None) -> SolveOutcome:
        options = options or SolveOptions()
        mp = self.model
        head = mp.head()
        apple = mp.apple()
        if apple is not None and head is None:
            raise ModelContractViolation("apple external is set but no head is")

        g = mp.grid
        self._reset_search_state()
        self._stats = SolveStats()
        self._anchor = g.cell_index(head) if head is not None else 0
        self._apple = g.cell_index(apple) if apple is not None else -1
        self._bounding = options.bounding and apple is not None
        self._lower_bound = abs(head[0] - apple[0]) + abs(head[1] - apple[1]) + 1 if apple is not None else None
        self._best: int | None = None
        self._incumbent: list[Coord] | None = None
        self._models: list[int | None] = []
        self._restricted = False
        self._first_dummy = False
        self._diving = self._warm is not None
        self._deadline = time.monotonic() + options.deadline_ms / 1000
        self._next_check = DEADLINE_CHECK_EVERY
        self._call_clauses: list[Clause] = []
        self._ctx = SearchContext(self)
        self._on_model = options.on_model

        timed_out = False
        proven = False
        started = time.perf_counter()
        try:
            if self._setup_root(options.assumptions):
                proven = self._search()
            else:
                proven = True
        except _DeadlineReached:
            timed_out = True
        finally:
            self._finish()

        stats = self._stats
        logger.debug(
            "solve: objective=%s proven=%s timeout=%s models=%d decisions=%d conflicts=%d in %.1f ms",
            self._best, proven and self._incumbent is not None, timed_out, stats.models,
            stats.decisions, stats.conflicts, (time.perf_counter() - started) * 1000,
        )
        if self._incumbent is None:
            if timed_out:
                raise NoModelBeforeDeadline(f"no cycle found within {options.deadline_ms:g} ms")
            raise Unsat("no Hamiltonian cycle satisfies the current constraints")
        return SolveOutcome(
            incumbent=self._incumbent,
            objective=self._best,
            optimal_proven=proven and self._bounding and not timed_out,
            timed_out=timed_out,
            stats=stats,
            restricted_search=self._restricted,
            models=self._models,
            first_model_dummy=self._first_dummy,
        )

    def _reset_search_state(self) -> None:
        n = self._n_cells
        mp = self.model
        self._trail: list[int] = []
        self._undo: list = []
        self._trail_lim: list[int] = []
        self._decisions: list[int] = []
        self._qhead = 0
        self._succ = [-1] * n
        self._succ_var = [0] * n
        self._start_of = list(range(n))
        self._end_of = list(range(n))
        self._size = [1] * n
        self._out_true = [0] * n
        self._in_true = [0] * n
        self._out_free = [len(v) for v in mp.out_vars]
        self._in_free = [len(v) for v in mp.in_vars]
        self._closed = False
        self._pending: list[list[int]] = []
        self._events = 0

    def _setup_root(self, assumptions: Sequence[Assumption]) -> bool:
        E = self._E
        activation = self.model.activation
        for var in range(1, E + 1):
            self._enqueue(E + var if activation[var] else -(E + var))

        lits = []
        for item, value in assumptions:
            if isinstance(item, GuardLit):
                if item.released:
                    raise GuardReleased(f"guard {item.id} was released and cannot be assumed")
                lits.append(item.id if value else -item.id)
            else:
                lits.append(self.model.lit(item, value))
        assumed = {abs(lit) for lit in lits}
        for gid in self._guards:
            if gid not in assumed:
                self._enqueue(-gid)

        for lit in lits:
            if not self._enqueue(lit):
                return False
        for c in self._units:
            if not c.deleted and not self._enqueue(c.lits[0]):
                return False
        return self._propagate()

    def _search(self) -> bool:
        """Runs until the search space is exhausted (True) or stopped early (False)."""
        while True:
            if not self._propagate():
                if not self._on_conflict():
                    return True
                continue
            if self._closed:
                done = self._emit_model()
                if done is not None:
                    return done
                continue
            if not self._decide():
                if not self._on_conflict():
                    return True

    def _on_conflict(self) -> bool:
        self._stats.conflicts += 1
        self._diving = False
        return self._resolve_conflict()

    def _resolve_conflict(self) -> bool:
        """Flips the latest decision; False once level 0 is in conflict."""
        while self._decisions:
            lit = self._decisions.pop()
            self._backtrack(len(self._decisions))
            if self._enqueue(-lit) and self._install_pending():
                return True
            self._stats.conflicts += 1
        return False

    def _decide(self) -> bool:
        found = self._inspect()
        if found is None:
            return False
        frontier, apple_reached = found
        value = self._value
        candidates = [w for w in self.model.out_vars[frontier] if value[w] == UNSET]
        if not candidates:
            return False
        pick = self._pick(frontier, candidates, apple_reached)
        self._trail_lim.append(len(self._trail))
        self._decisions.append(pick)
        self._stats.decisions += 1
        return self._enqueue(pick)

    def _inspect(self) -> tuple[int, bool] | None:
        """Walks the chain from the anchor; None when the node can be pruned."""
        succ = self._succ
        c = self._anchor
        length = 1
        apple_pos = None
        while True:
            nxt = succ[c]
            if nxt < 0 or nxt == self._anchor:
                break
            c = nxt
            length += 1
            if c == self._apple:
                apple_pos = length
        frontier = c

        reached = apple_pos is not None
        if self._bounding and self._best is not None:
            bound = apple_pos if reached else self._apple_lower_bound(frontier, length)
            if bound >= self._best:
                return None
        if not self._remainder_connected(frontier):
            return None
        return frontier, reached

    def _apple_lower_bound(self, frontier: int, length: int) -> int:
        """Earliest cycle position the apple can still take, counting the anchor as 1."""
        succ = self._succ
        xy = self._xy
        apple = self._apple
        # walk the apple's fragment forward
        c = apple
        steps = 0
        while c != self._anchor and succ[c] >= 0:
            c = succ[c]
            steps += 1
        if c == self._anchor:
            # apple sits behind the anchor: its position is fixed
            return self._n_cells - steps + 1
        start = self._start_of[c]
        offset = 0
        s = start
        while s != apple:
            s = succ[s]
            offset += 1
        fx, fy = xy[frontier]
        ax, ay = xy[apple]
        sx, sy = xy[start]
        direct = length + abs(fx - ax) + abs(fy - ay)
        via_start = length + abs(fx - sx) + abs(fy - sy) + offset
        return max(direct, via_start)

    def _remainder_connected(self, frontier: int) -> bool:
        """Cells outside the frontier's fragment interior must stay reachable."""
        succ = self._succ
        start = self._start_of[frontier]
        blocked = bytearray(self._n_cells)
        interior = 0
        c = succ[start] if start != frontier else frontier
        while c != frontier:
            blocked[c] = 1
            interior += 1
            c = succ[c]

        value = self._value
        rev = self._rev
        dst = self.model.edge_dst
        out_vars = self.model.out_vars
        seen = blocked
        seen[frontier] = 1
        stack = [frontier]
        reached = 1
        while stack:
            c = stack.pop()
            for w in out_vars[c]:
                d = dst[w]
                if seen[d]:
                    continue
                if value[w] == FALSE and value[rev[w]] == FALSE:
                    continue
                seen[d] = 1
                reached += 1
                stack.append(d)
        if reached == self._n_cells - interior:
            return True
        self._learn_cut(seen)
        return False

    def _learn_cut(self, seen: bytearray) -> None:
        """Queues 'some edge enters the unreached cells'. Every Hamiltonian
        cycle satisfies it, so it stays valid for later calls."""
        src = self.model.edge_src
        value = self._value
        lits = []
        for b in range(self._n_cells):
            if seen[b]:
                continue
            for w in self.model.in_vars[b]:
                if not seen[src[w]]:
                    continue
                if value[w] != FALSE:
                    return
                lits.append(w)
                if len(lits) > CUT_CLAUSE_MAX:
                    return
        if len(lits) >= 2:
            self._pending.append(lits)

    def _pick(self, frontier: int, candidates: list[int], apple_reached: bool) -> int:
        warm = self._warm
        if self._diving and warm is not None:
            w = warm.succ_var[frontier]
            if w in candidates:
                return w
        dst = self.model.edge_dst
        preferred = warm.edges if warm is not None else frozenset()
        if self._apple >= 0 and not apple_reached:
            ax, ay = self._xy[self._apple]

            def key(w: int) -> tuple[int, int]:
                x, y = self._xy[dst[w]]
                return (abs(x - ax) + abs(y - ay), w not in preferred)
        else:
            out_free = self._out_free

            def key(w: int) -> tuple[int, int]:
                return (out_free[dst[w]], w not in preferred)
        # min is stable, so ties keep direction order
        return min(candidates, key=key)

    def _emit_model(self) -> bool | None:
        """Records a full cycle. Returns True/False to end the search, None to go on."""
        from_dive = self._diving
        self._diving = False
        succ = self._succ
        order = [self._anchor]
        while len(order) < self._n_cells:
            order.append(succ[order[-1]])
        cycle = [self._xy[i] for i in order]
        objective = order.index(self._apple) + 1 if self._bounding else None
        if objective is not None and self._best is not None and objective >= self._best:
            # closed by propagation past the bound
            return None if self._resolve_conflict() else True
        edges = frozenset(self._succ_var)
        dummy = self._warm is not None and edges == self._warm.edges

        self._stats.models += 1
        model = Model(cycle=cycle, objective=objective, dummy=dummy, number=self._stats.models)
        if model.number == 1:
            self._first_dummy = dummy
        self._models.append(objective)

        keep_going = True
        injected: list[list[int]] = []
        if self._on_model is not None:
            ctx = self._ctx
            ctx.injected = []
            ctx.active = True
            try:
                keep_going = self._on_model(model, ctx) is not False
            finally:
                ctx.active = False
            injected = ctx.injected

        accepted = all(any(self._lit_value(l) == TRUE for l in lits) for lits in injected)
        if accepted:
            self._incumbent = cycle
            self._best = objective

        if injected:
            self._restricted = True
            self._stats.restarts += 1
            self._backtrack(0)
            if not self._attach_call_clauses(injected):
                return True
            if self._closed:
                # the cycle is forced at level 0; nothing else to enumerate
                return True
        if not keep_going:
            return False
        if not self._bounding:
            return False if accepted else None
        if accepted and objective <= self._lower_bound:
            return True
        if from_dive and time.monotonic() >= self._deadline:
            raise _DeadlineReached()
        if injected:
            return None
        if from_dive:
            # search again from the root, now under the warm start's bound
            self._stats.restarts += 1
            self._backtrack(0)
            return True if self._closed else None
        if not self._resolve_conflict():
            return True
        return None

    def _attach_call_clauses(self, injected: list[list[int]]) -> bool:
        for raw in injected:
            lits = normalize(raw)
            if lits is None:
                continue
            if not lits:
                return False
            if len(lits) == 1:
                if not self._enqueue(lits[0]):
                    return False
                continue
            c = Clause(lits, ClauseTag.CALL)
            self._order_for_watch(c.lits)
            self._watch(c)
            self._call_clauses.append(c)
            if not self._check_unit(c.lits):
                return False
        return True

    def _check_unit(self, lits: list[int]) -> bool:
        free = None
        for lit in lits:
            val = self._lit_value(lit)
            if val == TRUE:
                return True
            if val == UNSET:
                if free is not None:
                    return True
                free = lit
        if free is None:
            return False
        return self._enqueue(free)

    def _install_pending(self) -> bool:
        pending, self._pending = self._pending, []
        for i, lits in enumerate(pending):
            key = frozenset(lits)
            if key not in self._learned_keys:
                c = Clause(list(lits), ClauseTag.LEARNED, last_used=self._tick)
                self._order_for_watch(c.lits)
                self._watch(c)
                self._learned.append(c)
                self._learned_keys[key] = c
                self._stats.learned += 1
            if not self._check_unit(lits):
                self._pending.extend(pending[i + 1:])
                return False
        self._evict_learned()
        return True

    def _evict_learned(self) -> None:
        excess = len(self._learned) - self.learned_cap
        if excess <= 0:
            return
        ranked = sorted(self._learned, key=lambda c: (c.activity, c.last_used))
        for c in ranked[:excess]:
            c.deleted = True
            self._learned_keys.pop(frozenset(c.lits), None)
        self._learned = [c for c in self._learned if not c.deleted]
        logger.debug("evicted %d learned clauses", excess)

    def _finish(self) -> None:
        self._unassign_to(0)
        self._trail_lim.clear()
        self._decisions.clear()
        for c in self._call_clauses:
            c.deleted = True
        self._call_clauses = []
        for lits in self._pending:
            key = frozenset(lits)
            if key not in self._learned_keys:
                c = Clause(list(lits), ClauseTag.LEARNED, last_used=self._tick)
                self._watch(c)
                self._learned.append(c)
                self._learned_keys[key] = c
                self._stats.learned += 1
        self._pending = []
        self._evict_learned()
        self._ctx.active = False
        self._stats.learned_total = len(self._learned)
        self._stats.clauses = self.clause_count()
        self.stats_total.add(self._stats)

    # ------------------------------------------------------------------
    # assignment and propagation
    # ------------------------------------------------------------------

    def _enqueue(self, lit: int) -> bool:
        var = lit if lit > 0 else -lit
        val = TRUE if lit > 0 else FALSE
        cur = self._value[var]
        if cur != UNSET:
            return cur == val

        record = None
        if var <= self._E:
            u = self.model.edge_src[var]
            v = self.model.edge_dst[var]
            if val == TRUE:
                if self._out_true[u] or self._in_true[v]:
                    return False
                s = self._start_of[u]
                if s == v:
                    if self._size[s] != self._n_cells:
                        self._pending.append(self._subtour_clause(u, v, var))
                        return False
                    record = _CLOSED
                    self._closed = True
                else:
                    e = self._end_of[v]
                    record = (s, e, self._size[s])
                    self._end_of[s] = e
                    self._start_of[e] = s
                    self._size[s] += self._size[v]
                self._succ[u] = v
                self._succ_var[u] = var
                self._out_true[u] += 1
                self._in_true[v] += 1
            self._out_free[u] -= 1
            self._in_free[v] -= 1

        self._value[var] = val
        self._level[var] = len(self._trail_lim)
        self._trail.append(lit)
        self._undo.append(record)
        self._events += 1
        return True

    def _subtour_clause(self, u: int, v: int, closing_var: int) -> list[int]:
        lits = [-closing_var]
        c = v
        while c != u:
            lits.append(-self._succ_var[c])
            c = self._succ[c]
        return lits

    def _backtrack(self, level: int) -> None:
        if len(self._trail_lim) <= level:
            return
        target = self._trail_lim[level]
        del self._trail_lim[level:]
        del self._decisions[level:]
        self._unassign_to(target)

    def _unassign_to(self, target: int) -> None:
        trail = self._trail
        undo = self._undo
        value = self._value
        E = self._E
        src = self.model.edge_src
        dst = self.model.edge_dst
        while len(trail) > target:
            lit = trail.pop()
            record = undo.pop()
            var = lit if lit > 0 else -lit
            value[var] = UNSET
            if var > E:
                continue
            u = src[var]
            v = dst[var]
            self._out_free[u] += 1
            self._in_free[v] += 1
            if lit > 0:
                self._out_true[u] -= 1
                self._in_true[v] -= 1
                self._succ[u] = -1
                self._succ_var[u] = 0
                if record is _CLOSED:
                    self._closed = False
                elif record is not None:
                    s, e, size = record
                    self._end_of[s] = u
                    self._start_of[e] = v
                    self._size[s] = size
        self._qhead = min(self._qhead, target)

    def _propagate(self) -> bool:
        trail = self._trail
        value = self._value
        E = self._E
        mp = self.model
        src, dst = mp.edge_src, mp.edge_dst
        out_vars, in_vars = mp.out_vars, mp.in_vars
        while self._qhead < len(trail):
            lit = trail[self._qhead]
            self._qhead += 1
            self._stats.propagations += 1
            var = lit if lit > 0 else -lit
            if var <= E:
                u = src[var]
                v = dst[var]
                if lit > 0:
                    # no two-cell cycles
                    r = self._rev[var]
                    if value[r] == UNSET and not self._enqueue(-r):
                        return False
                    for w in out_vars[u]:
                        if w != var and value[w] == UNSET and not self._enqueue(-w):
                            return False
                    for w in in_vars[v]:
                        if w != var and value[w] == UNSET and not self._enqueue(-w):
                            return False
                else:
                    if not self._complete_degree(out_vars[u], self._out_true[u], self._out_free[u]):
                        return False
                    if not self._complete_degree(in_vars[v], self._in_true[v], self._in_free[v]):
                        return False
            if not self._propagate_clauses(-lit):
                return False
            if self._events >= self._next_check:
                self._next_check = self._events + DEADLINE_CHECK_EVERY
                if not self._diving and time.monotonic() >= self._deadline:
                    raise _DeadlineReached()
        return True

    def _complete_degree(self, group: list[int], taken: int, free: int) -> bool:
        """Each cell needs exactly one incoming and one outgoing edge."""
        if taken:
            return True
        if free == 0:
            return False
        if free == 1:
            value = self._value
            for w in group:
                if value[w] == UNSET:
                    return self._enqueue(w)
        return True

    def _propagate_clauses(self, falsified: int) -> bool:
        watchers = self._watches.get(falsified)
        if not watchers:
            return True
        keep: list[Clause] = []
        k = 0
        total = len(watchers)
        while k < total:
            c = watchers[k]
            k += 1
            if c.deleted:
                continue
            lits = c.lits
            if lits[0] == falsified:
                lits[0], lits[1] = lits[1], lits[0]
            first = lits[0]
            first_val = self._lit_value(first)
            if first_val == TRUE:
                keep.append(c)
                continue
            moved = False
            for i in range(2, len(lits)):
                if self._lit_value(lits[i]) != FALSE:
                    lits[1], lits[i] = lits[i], falsified
                    self._watches[lits[1]].append(c)
                    moved = True
                    break
            if moved:
                continue
            keep.append(c)
            if first_val == FALSE or not self._enqueue(first):
                keep.extend(watchers[k:])
                self._watches[falsified] = keep
                return False
            if c.tag is ClauseTag.LEARNED:
                self._tick += 1
                c.activity += 1.0
                c.last_used = self._tick
        self._watches[falsified] = keep
        return True
