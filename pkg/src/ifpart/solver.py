"""Complete search for I,F-partitions that extend an assignment.

The driver peels reducible configurations off first (see :mod:`ifpart.reductions`)
and solves connected components independently; what remains goes to a backtracking
search that tracks 2-neighbourhood blocking for the independent side and an undoable
union-find for the forest side, forcing any vertex left with a single option.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Iterator

from .discharging import detect_configurations
from .graph import AssignedGraph, Label, Partition, verify_if_partition
from .reductions import applicable, reduce_configuration

CAPS_ENV = "IFPART_CAPS"

# order in which configurations are tried; exact ones first
_REDUCTION_PRIORITY = ("C1", "CL6_1", "C2", "C3", "CL6_2", "CL7", "CL8", "CL9")


class Inconclusive(Exception):
    """A resource cap was hit before the search finished."""


@dataclass(frozen=True)
class Limits:
    nodes: int | None = None
    ms: int | None = None

    @classmethod
    def from_env(cls, env: dict | None = None) -> "Limits":
        """Read ``IFPART_CAPS``, e.g. ``"ms=60000,nodes=5000000"``."""
        raw = (os.environ if env is None else env).get(CAPS_ENV, "")
        values: dict[str, int] = {}
        for item in raw.split(","):
            item = item.strip()
            if not item:
                continue
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in ("ms", "nodes"):
                raise ValueError(f"unknown key {key!r} in {CAPS_ENV}")
            values[key] = int(val)
        return cls(**values)


@dataclass(frozen=True)
class SolveStats:
    nodes: int = 0
    reductions: int = 0
    fallbacks: int = 0

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "reductions": self.reductions, "fallbacks": self.fallbacks}


@dataclass(frozen=True)
class SolveResult:
    """``outcome`` is ``"SAT"``, ``"UNSAT"`` or ``"INCONCLUSIVE"``."""

    outcome: str
    partition: Partition | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def sat(self) -> bool:
        return self.outcome == "SAT"


class _UndoUnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append((ra, rb))
        return True

    def undo(self) -> None:
        ra, rb = self.history.pop()
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]


class _Budget:
    def __init__(self, limits: Limits):
        self.limits = limits
        self.start = time.monotonic()
        self.nodes = 0
        self.reductions = 0
        self.fallbacks = 0

    def tick(self) -> None:
        self.nodes += 1
        lim = self.limits
        if lim.nodes is not None and self.nodes > lim.nodes:
            raise Inconclusive(f"node cap {lim.nodes} reached")
        if lim.ms is not None and self.nodes % 256 == 0:
            if (time.monotonic() - self.start) * 1000 > lim.ms:
                raise Inconclusive(f"time cap {lim.ms} ms reached")

    def stats(self) -> SolveStats:
        return SolveStats(self.nodes, self.reductions, self.fallbacks)


class _Search:
    """Backtracking over one assigned graph; ``run`` yields every extending partition."""

    def __init__(self, ag: AssignedGraph, budget: _Budget):
        self.ag = ag
        self.budget = budget
        g = ag.graph
        n = ag.n
        self.n = n
        self.adj = [sorted(g.adj[v]) for v in range(n)]
        self.ball = []
        for v in range(n):
            b = set(g.adj[v])
            for w in g.adj[v]:
                b |= g.adj[w]
            b.discard(v)
            self.ball.append(sorted(b))
        self.side: list[str | None] = [None] * n
        self.blocked = [0] * n
        self.uf = _UndoUnionFind(n)
        self.trail: list[tuple[int, int]] = []  # (vertex, unions made)
        self.order = sorted(range(n), key=lambda v: (-g.degree(v), v))

    # -- primitive moves -------------------------------------------------
    def can_i(self, v: int) -> bool:
        return self.blocked[v] == 0 and self.ag.labels[v] is not Label.F

    def can_f(self, v: int) -> bool:
        if self.ag.labels[v] is Label.I:
            return False
        roots = set()
        for w in self.adj[v]:
            if self.side[w] == "F":
                r = self.uf.find(w)
                if r in roots:
                    return False
                roots.add(r)
        return True

    def assign(self, v: int, s: str) -> None:
        self.side[v] = s
        unions = 0
        if s == "I":
            for w in self.ball[v]:
                self.blocked[w] += 1
        else:
            for w in self.adj[v]:
                if self.side[w] == "F" and self.uf.union(v, w):
                    unions += 1
        self.trail.append((v, unions))

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            v, unions = self.trail.pop()
            if self.side[v] == "I":
                for w in self.ball[v]:
                    self.blocked[w] -= 1
            for _ in range(unions):
                self.uf.undo()
            self.side[v] = None

    # -- search -----------------------------------------------------------
    def propagate(self) -> bool:
        changed = True
        while changed:
            changed = False
            for v in self.order:
                if self.side[v] is not None:
                    continue
                ci, cf = self.can_i(v), self.can_f(v)
                if not ci and not cf:
                    return False
                if ci != cf:
                    self.assign(v, "I" if ci else "F")
                    changed = True
        return True

    def partition(self) -> Partition:
        return Partition.of(
            (v for v in range(self.n) if self.side[v] == "I"),
            (v for v in range(self.n) if self.side[v] == "F"),
        )

    def run(self) -> Iterator[Partition]:
        # preassigned vertices first; a clash here means no partition at all
        for v in range(self.n):
            lab = self.ag.labels[v]
            if lab is Label.I:
                if not self.can_i(v):
                    return
                self.assign(v, "I")
            elif lab is Label.F:
                if not self.can_f(v):
                    return
                self.assign(v, "F")
        yield from self._branch()

    def _branch(self) -> Iterator[Partition]:
        self.budget.tick()
        mark = len(self.trail)
        if not self.propagate():
            self.undo_to(mark)
            return
        v = next((x for x in self.order if self.side[x] is None), None)
        if v is None:
            yield self.partition()
            self.undo_to(mark)
            return
        for s in ("F", "I"):
            if (s == "F" and self.can_f(v)) or (s == "I" and self.can_i(v)):
                inner = len(self.trail)
                self.assign(v, s)
                yield from self._branch()
                self.undo_to(inner)
        self.undo_to(mark)


def _backtrack(ag: AssignedGraph, budget: _Budget) -> Partition | None:
    return next(_Search(ag, budget).run(), None)


def _combine(parts: list[tuple[list[int], Partition]]) -> Partition:
    ind, forest = set(), set()
    for order, p in parts:
        ind.update(order[v] for v in p.independent_part)
        forest.update(order[v] for v in p.forest_part)
    return Partition.of(ind, forest)


def _solve(ag: AssignedGraph, budget: _Budget, use_reductions: bool) -> Partition | None:
    if ag.n == 0:
        return Partition.of((), ())
    comps = ag.graph.components()
    if len(comps) > 1:
        parts = []
        for comp in comps:
            sub, order = ag.induced(comp)
            p = _solve(sub, budget, use_reductions)
            if p is None:
                return None
            parts.append((order, p))
        return _combine(parts)

    if use_reductions:
        configs = [c for c in detect_configurations(ag) if applicable(ag, c)]
        rank = {k: i for i, k in enumerate(_REDUCTION_PRIORITY)}
        configs.sort(key=lambda c: rank[c.kind])
        if configs:
            step = reduce_configuration(ag, configs[0], check=False)
            budget.reductions += 1
            sub = _solve(step.reduced, budget, use_reductions)
            if sub is not None:
                return step.extend(sub)
            if step.exact:
                return None
            budget.fallbacks += 1
    return _backtrack(ag, budget)


def solve_if_partition(
    ag: AssignedGraph,
    *,
    limits: Limits | None = None,
    use_reductions: bool = True,
) -> SolveResult:
    """Decide whether ``ag`` has an I,F-partition extending its labels.

    Never answers wrongly: a hit resource cap gives ``"INCONCLUSIVE"``.
    """
    budget = _Budget(limits if limits is not None else Limits.from_env())
    try:
        p = _solve(ag, budget, use_reductions)
    except Inconclusive:
        return SolveResult("INCONCLUSIVE", None, budget.stats())
    if p is None:
        return SolveResult("UNSAT", None, budget.stats())
    problems = verify_if_partition(ag, p)
    assert not problems, problems
    return SolveResult("SAT", p, budget.stats())


def iter_if_partitions(ag: AssignedGraph, limits: Limits | None = None) -> Iterator[Partition]:
    """Every I,F-partition extending ``ag``'s labels, by plain search (no reductions)."""
    budget = _Budget(limits if limits is not None else Limits())
    yield from _Search(ag, budget).run()


def brute_force_if_partitions(ag: AssignedGraph, cap: int = 20) -> Iterator[Partition]:
    """Every extending I,F-partition by checking all ``2^n`` splits."""
    n = ag.n
    if n > cap:
        raise ValueError(f"{n} vertices exceeds the brute-force cap of {cap}")
    for mask in range(1 << n):
        p = Partition.from_flags([(mask >> v) & 1 == 1 for v in range(n)])
        if not verify_if_partition(ag, p):
            yield p
