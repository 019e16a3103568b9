"""Integer max-flow (Dinic) and the selection network used for closure problems.

The selection network has one node per edge and per vertex of the host graph.
Choosing an edge earns its profit but requires both endpoints, each of which
costs its weight; the most profitable closure is read off a minimum cut.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        if capacity < 0:
            raise ValueError("capacities must be non-negative")
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        return len(self.to) - 2

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self.head[x]:
                y = self.to[a]
                if self.cap[a] > 0 and level[y] < 0:
                    level[y] = level[x] + 1
                    queue.append(y)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        to, cap, head = self.to, self.cap, self.head
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            # iterative blocking-flow DFS
            while True:
                path: list[int] = []
                x = s
                while x != t:
                    arcs = head[x]
                    advanced = False
                    while it[x] < len(arcs):
                        a = arcs[it[x]]
                        y = to[a]
                        if cap[a] > 0 and level[y] == level[x] + 1:
                            path.append(a)
                            x = y
                            advanced = True
                            break
                        it[x] += 1
                    if not advanced:
                        if x == s:
                            break
                        level[x] = -1
                        a = path.pop()
                        x = to[a ^ 1]
                        it[x] += 1
                if x != t:
                    break
                push = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= push
                    cap[a ^ 1] += push
                total += push

    def source_side(self, s: int) -> set[int]:
        """Nodes reachable from ``s`` in the residual network (minimal min-cut side)."""
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self.head[x]:
                y = self.to[a]
                if self.cap[a] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def sink_side(self, t: int) -> set[int]:
        """Nodes that can still reach ``t`` in the residual network (minimal sink side)."""
        seen = {t}
        queue = deque([t])
        while queue:
            x = queue.popleft()
            for a in self.head[x]:
                # residual arc y -> x is the partner of arc a (x -> y)
                y = self.to[a]
                if self.cap[a ^ 1] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen


@dataclass
class SelectionNetwork:
    """Closure network: source -> edge-node (profit), edge-node -> endpoints (unbounded),
    vertex-node -> sink (cost). Node ids: 0 source, 1 sink, then edges, then vertices."""

    vertex_count: int
    edges: Sequence[tuple[int, int]]
    edge_profit: int
    vertex_cost: Sequence[int]
    network: FlowNetwork = field(init=False)
    unbounded: int = field(init=False)

    SOURCE = 0
    SINK = 1

    def __post_init__(self):
        m = len(self.edges)
        self.unbounded = self.edge_profit * m + sum(self.vertex_cost) + 1
        net = FlowNetwork(2 + m + self.vertex_count)
        for k, (u, v) in enumerate(self.edges):
            node = 2 + k
            net.add_arc(self.SOURCE, node, self.edge_profit)
            net.add_arc(node, self.vertex_node(u), self.unbounded)
            net.add_arc(node, self.vertex_node(v), self.unbounded)
        for v, w in enumerate(self.vertex_cost):
            net.add_arc(self.vertex_node(v), self.SINK, w)
        self.network = net

    def vertex_node(self, v: int) -> int:
        return 2 + len(self.edges) + v

    def solve(self, maximal: bool = False) -> tuple[int, frozenset[int]]:
        """Return ``(best profit, chosen vertices)``.

        Profit is ``edge_profit * |E(S)| - cost(S)`` maximized over vertex sets ``S``.
        ``maximal`` selects the largest optimal set instead of the smallest.
        """
        cut = self.network.max_flow(self.SOURCE, self.SINK)
        best = self.edge_profit * len(self.edges) - cut
        if maximal:
            sink_side = self.network.sink_side(self.SINK)
            chosen = frozenset(v for v in range(self.vertex_count) if self.vertex_node(v) not in sink_side)
        else:
            src = self.network.source_side(self.SOURCE)
            chosen = frozenset(v for v in range(self.vertex_count) if self.vertex_node(v) in src)
        return best, chosen
