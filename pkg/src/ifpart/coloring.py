"""Star colorings: forest 3-colorings, 4-colorings from I,F-partitions, checkers and exact search."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import AssignedGraph, Graph, Partition, Violation, verify_if_partition
from .potential import CapExceeded

STAR_CHROMATIC_CAP = 12


@dataclass(frozen=True)
class StarColoring:
    colors: tuple[int, ...]

    def __post_init__(self):
        if any(c < 1 for c in self.colors):
            raise ValueError("colors are positive integers")


@dataclass(frozen=True)
class ColoringResult:
    coloring: StarColoring
    colors_used: int

    def to_json(self) -> dict:
        return {"k": self.colors_used, "colors": list(self.coloring.colors)}


def _result(colors: Sequence[int]) -> ColoringResult:
    return ColoringResult(StarColoring(tuple(colors)), len(set(colors)))


def _colors_of(g: Graph, c) -> tuple[int, ...]:
    colors = c.colors if isinstance(c, StarColoring) else tuple(c)
    if len(colors) != g.n or any(x is None for x in colors):
        raise ValueError("coloring must assign a color to every vertex")
    return colors


def verify_star_coloring(g: Graph, c: StarColoring | Sequence[int]) -> list[Violation]:
    """Improperly colored edges plus every 2-colored path on four vertices."""
    col = _colors_of(g, c)
    out = [Violation("improper", (u, v)) for u, v in g.sorted_edges() if col[u] == col[v]]
    if out:
        return out
    for b in range(g.n):
        for cc in g.adj[b]:
            for a in g.adj[b]:
                if a == cc or col[a] != col[cc]:
                    continue
                for d in g.adj[cc]:
                    if d != b and col[d] == col[b] and (a, b, cc, d) < (d, cc, b, a):
                        out.append(Violation("bicolored_p4", (a, b, cc, d)))
    return out


def is_star_coloring_by_components(g: Graph, c: StarColoring | Sequence[int]) -> bool:
    """Independent check: proper, and every two color classes induce a forest of stars."""
    col = _colors_of(g, c)
    if any(col[u] == col[v] for u, v in g.edges):
        return False
    for p, q in itertools.combinations(sorted(set(col)), 2):
        sub, _ = g.induced(v for v in range(g.n) if col[v] in (p, q))
        for comp in sub.components():
            k = len(comp)
            edges = sub.induced_edge_count(comp)
            if edges != k - 1:
                return False
            if k > 2 and not any(sub.degree(v) == k - 1 for v in comp):
                return False
    return True


def star_color_forest(g: Graph) -> ColoringResult:
    """Color each tree by depth mod 3 from its lowest-indexed vertex."""
    if not g.is_forest():
        raise ValueError("star_color_forest needs an acyclic graph")
    colors = [0] * g.n
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        colors[root] = 1
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adj[x]):
                if not seen[y]:
                    seen[y] = True
                    colors[y] = colors[x] % 3 + 1
                    queue.append(y)
    return _result(colors)


def star_coloring_from_partition(g: Graph, p: Partition) -> ColoringResult:
    """Forest side gets colors 1-3 tree by tree, the 2-independent side gets color 4."""
    problems = verify_if_partition(AssignedGraph.unassigned(g), p)
    if problems:
        raise ValueError(f"not an I,F-partition: {problems[0]}")
    forest, order = g.induced(p.forest_part)
    sub = star_color_forest(forest).coloring.colors
    colors = [4] * g.n
    for i, v in enumerate(order):
        colors[v] = sub[i]
    return _result(colors)


def _search_order(g: Graph) -> list[int]:
    order: list[int] = []
    placed = [0] * g.n
    left = set(range(g.n))
    while left:
        v = max(left, key=lambda x: (placed[x], g.degree(x), -x))
        order.append(v)
        left.discard(v)
        for w in g.adj[v]:
            placed[w] += 1
    return order


def _k_star_coloring(g: Graph, k: int) -> list[int] | None:
    n = g.n
    adj = [sorted(g.adj[v]) for v in range(n)]
    col = [0] * n
    order = _search_order(g)

    def ok(x: int) -> bool:
        cx = col[x]
        for b in adj[x]:
            cb = col[b]
            if cb == cx:
                return False
            if not cb:
                continue
            # x at an end: x-b-c-d with c colored like x, d like b
            for cc in adj[b]:
                if cc != x and col[cc] == cx:
                    if any(d != b and col[d] == cb for d in adj[cc]):
                        return False
        # x second on the path: a-x-c-d with a, c alike and d like x
        for a in adj[x]:
            ca = col[a]
            if not ca:
                continue
            for cc in adj[x]:
                if cc != a and col[cc] == ca:
                    if any(d != x and col[d] == cx for d in adj[cc]):
                        return False
        return True

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        x = order[i]
        for c in range(1, min(k, used + 1) + 1):
            col[x] = c
            if ok(x) and rec(i + 1, max(used, c)):
                return True
        col[x] = 0
        return False

    return col if rec(0, 0) else None


def star_chromatic_number(g: Graph, cap: int = STAR_CHROMATIC_CAP) -> ColoringResult:
    """Exact star chromatic number with a witness coloring."""
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds the exact star-coloring cap of {cap}")
    if g.n == 0:
        return ColoringResult(StarColoring(()), 0)
    for k in range(1, g.n + 1):
        found = _k_star_coloring(g, k)
        if found is not None:
            return _result(found)
    raise AssertionError("every graph has a star n-coloring")
