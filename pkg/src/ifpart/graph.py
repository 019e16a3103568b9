"""Simple graphs, assigned graphs, text formats and I,F-partition verification."""

from __future__ import annotations

import enum
import warnings
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed input. ``line`` is 1-based, ``offset`` is a 0-based byte offset."""

    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.offset = offset


class InputWarning(UserWarning):
    """Legal but suspicious input (duplicate edges, clashing I labels)."""


class Label(str, enum.Enum):
    I = "I"
    F = "F"
    U = "U"


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) is not a normalized pair below {self.vertex_count}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(_norm(u, v) for u, v in edges))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced_edge_count(self, vertices: Iterable[int]) -> int:
        s = set(vertices)
        return sum(1 for u, v in self.edges if u in s and v in s)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` renumbered densely; returns it with the new->old map."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(order), edges), order

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_forest(self) -> bool:
        return self.m == self.vertex_count - len(self.components())


@dataclass(frozen=True)
class AssignedGraph:
    graph: Graph
    labels: tuple[Label, ...]

    def __post_init__(self):
        if len(self.labels) != self.graph.vertex_count:
            raise ValueError("labels must cover every vertex")
        object.__setattr__(self, "labels", tuple(Label(x) for x in self.labels))

    @classmethod
    def unassigned(cls, g: Graph) -> "AssignedGraph":
        return cls(g, (Label.U,) * g.vertex_count)

    @classmethod
    def from_string(cls, g: Graph, letters: str) -> "AssignedGraph":
        """``from_string(g, "IFU")`` labels vertex i with ``letters[i]``."""
        return cls(g, tuple(Label(c) for c in letters))

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    def label(self, v: int) -> Label:
        return self.labels[v]

    def vertices_with(self, label: Label, subset: Iterable[int] | None = None) -> set[int]:
        pool = range(self.n) if subset is None else subset
        return {v for v in pool if self.labels[v] is label}

    @property
    def I(self) -> frozenset[int]:  # noqa: E743
        return frozenset(self.vertices_with(Label.I))

    @property
    def F(self) -> frozenset[int]:
        return frozenset(self.vertices_with(Label.F))

    @property
    def U(self) -> frozenset[int]:
        return frozenset(self.vertices_with(Label.U))

    def relabel(self, changes: dict[int, Label]) -> "AssignedGraph":
        labels = list(self.labels)
        for v, lab in changes.items():
            labels[v] = Label(lab)
        return AssignedGraph(self.graph, tuple(labels))

    def induced(self, vertices: Iterable[int]) -> tuple["AssignedGraph", list[int]]:
        sub, order = self.graph.induced(vertices)
        return AssignedGraph(sub, tuple(self.labels[v] for v in order)), order

    def label_string(self) -> str:
        return "".join(lab.value for lab in self.labels)


@dataclass(frozen=True)
class Partition:
    independent_part: frozenset[int]
    forest_part: frozenset[int]

    @classmethod
    def of(cls, independent: Iterable[int], forest: Iterable[int]) -> "Partition":
        return cls(frozenset(independent), frozenset(forest))

    @classmethod
    def from_flags(cls, in_independent: Sequence[bool]) -> "Partition":
        return cls(
            frozenset(v for v, flag in enumerate(in_independent) if flag),
            frozenset(v for v, flag in enumerate(in_independent) if not flag),
        )

    def to_json(self) -> dict:
        return {"I": sorted(self.independent_part), "F": sorted(self.forest_part)}


@dataclass(frozen=True)
class Violation:
    """``kind`` is ``"distance"``, ``"cycle"`` or ``"extension"``.

    ``vertices`` holds the witnessing pair, the cycle in order, or the single breaching vertex;
    ``path`` is the connecting path of a distance conflict.
    """

    kind: str
    vertices: tuple[int, ...]
    path: tuple[int, ...] = ()


# ---------------------------------------------------------------------------
# graph6

_G6_HEADER = b">>graph6<<"


def _g6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    raise ValueError(f"graph6 supports at most 258047 vertices, got {n}")


def to_graph6(g: Graph) -> str:
    n = g.vertex_count
    out = bytearray(_g6_size(n))
    acc = 0
    nbits = 0
    for j in range(1, n):
        nbrs = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (i in nbrs)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def parse_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    start = 0
    if data.startswith(_G6_HEADER):
        start = len(_G6_HEADER)
    body = data[start:]
    for i, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise ParseError(f"invalid graph6 byte {byte!r}", line=1, offset=start + i)
    if not body:
        raise ParseError("empty graph6 string", line=1, offset=start)
    if body[0] != 126:
        n, pos = body[0] - 63, 1
    else:
        if len(body) >= 2 and body[1] == 126:
            raise ParseError("graph6 sizes above 258047 are not supported", line=1, offset=start + 1)
        if len(body) < 4:
            raise ParseError("truncated graph6 size field", line=1, offset=start + len(body))
        n = ((body[1] - 63) << 12) | ((body[2] - 63) << 6) | (body[3] - 63)
        pos = 4
        if n <= 62:
            raise ParseError("non-canonical graph6 size field", line=1, offset=start)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) - pos != need:
        raise ParseError(
            f"graph6 body has {len(body) - pos} bytes, expected {need} for n={n}",
            line=1,
            offset=start + min(len(body), pos + need),
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[pos + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# edge list


def to_edge_list(g: Graph) -> str:
    """Serialize as ``u v`` lines preceded by a single-integer vertex-count line."""
    lines = [str(g.vertex_count)]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _text_lines(data: bytes | str):
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", offset=exc.start) from None
    for lineno, raw in enumerate(data.split("\n"), start=1):
        line = raw.rstrip("\r").split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_edge_list(data: bytes | str) -> Graph:
    """Parse whitespace-separated ``u v`` lines (0-indexed, ``#`` comments).

    A line holding a single integer declares the vertex count, which lets isolated
    vertices survive; otherwise the count is one more than the largest endpoint.
    """
    declared = None
    seen: set[tuple[int, int]] = set()
    edges = []
    top = -1
    for lineno, line in _text_lines(data):
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", line=lineno) from None
        if any(x < 0 for x in nums):
            raise ParseError("vertex ids must be non-negative", line=lineno)
        if len(nums) == 1:
            if declared is not None:
                raise ParseError("vertex count declared twice", line=lineno)
            declared = nums[0]
            continue
        if len(nums) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=lineno)
        u, v = nums
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=lineno)
        e = _norm(u, v)
        if e in seen:
            warnings.warn(f"duplicate edge {e} on line {lineno} ignored", InputWarning, stacklevel=2)
            continue
        seen.add(e)
        edges.append(e)
        top = max(top, e[1])
    n = top + 1
    if declared is not None:
        if declared < n:
            raise ParseError(f"declared vertex count {declared} but vertex {top} appears")
        n = declared
    return Graph.from_edges(n, edges)


def parse_graph(data: bytes | str, format: str = "graph6") -> Graph:
    """Parse ``data`` as ``graph6`` or ``edge_list`` (alias ``edges``)."""
    if format == "graph6":
        if isinstance(data, bytes):
            lines = [ln for ln in data.splitlines() if ln.strip()]
        else:
            lines = [ln for ln in data.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("no graph6 line found", line=1)
        return parse_graph6(lines[0])
    if format in ("edge_list", "edges"):
        return parse_edge_list(data)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "graph6") -> str:
    if format == "graph6":
        return to_graph6(g) + "\n"
    if format in ("edge_list", "edges"):
        return to_edge_list(g)
    raise ValueError(f"unknown graph format {format!r}")


# ---------------------------------------------------------------------------
# assignments


def parse_assignment(data: bytes | str, g: Graph) -> AssignedGraph:
    labels = [Label.U] * g.vertex_count
    for lineno, line in _text_lines(data):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'v L', got {line!r}", line=lineno)
        try:
            v = int(parts[0])
        except ValueError:
            raise ParseError(f"bad vertex id {parts[0]!r}", line=lineno) from None
        if not 0 <= v < g.vertex_count:
            raise ParseError(f"unknown vertex {v} (graph has {g.vertex_count})", line=lineno)
        try:
            labels[v] = Label(parts[1].upper())
        except ValueError:
            raise ParseError(f"unknown label {parts[1]!r}; expected I, F or U", line=lineno) from None
    ag = AssignedGraph(g, tuple(labels))
    clashes = i_label_conflicts(ag)
    if clashes:
        a, b = clashes[0].vertices
        warnings.warn(
            f"I-labeled vertices {a} and {b} are within distance 2; "
            "the instance has a subgraph of nonpositive potential",
            InputWarning,
            stacklevel=2,
        )
    return ag


def format_assignment(ag: AssignedGraph) -> str:
    return "".join(f"{v} {lab.value}\n" for v, lab in enumerate(ag.labels) if lab is not Label.U)


# ---------------------------------------------------------------------------
# verification


def _distance_conflicts(g: Graph, chosen: set[int]) -> list[Violation]:
    out = []
    for x in sorted(chosen):
        for y in sorted(g.adj[x]):
            if y in chosen and x < y:
                out.append(Violation("distance", (x, y), (x, y)))
        reported = set()
        for w in sorted(g.adj[x]):
            for y in sorted(g.adj[w]):
                if y in chosen and x < y and y not in g.adj[x] and y not in reported:
                    reported.add(y)
                    out.append(Violation("distance", (x, y), (x, w, y)))
    return out


def i_label_conflicts(ag: AssignedGraph) -> list[Violation]:
    """Pairs of I-labeled vertices at distance at most 2."""
    return _distance_conflicts(ag.graph, ag.vertices_with(Label.I))


def _tree_path(parent: dict[int, int | None], x: int, y: int) -> list[int]:
    up_x = [x]
    while parent[up_x[-1]] is not None:
        up_x.append(parent[up_x[-1]])
    pos = {v: i for i, v in enumerate(up_x)}
    up_y = [y]
    while up_y[-1] not in pos:
        up_y.append(parent[up_y[-1]])
    meet = up_y[-1]
    return up_x[: pos[meet] + 1] + up_y[-2::-1]


def forest_cycles(g: Graph, chosen: Iterable[int]) -> list[tuple[int, ...]]:
    """One fundamental cycle of ``g[chosen]`` per non-tree edge of a BFS spanning forest."""
    chosen = set(chosen)
    parent: dict[int, int | None] = {}
    tree_edges = set()
    for s in sorted(chosen):
        if s in parent:
            continue
        parent[s] = None
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adj[x]):
                if y in chosen and y not in parent:
                    parent[y] = x
                    tree_edges.add(_norm(x, y))
                    queue.append(y)
    cycles = []
    for u, v in g.sorted_edges():
        if u in chosen and v in chosen and (u, v) not in tree_edges:
            cycles.append(tuple(_tree_path(parent, u, v)))
    return cycles


def verify_if_partition(ag: AssignedGraph, p: Partition) -> list[Violation]:
    """Return every reason ``p`` fails to be an I,F-partition extending ``ag``'s labels."""
    n = ag.n
    ind, forest = p.independent_part, p.forest_part
    if ind & forest or (ind | forest) != frozenset(range(n)):
        raise ValueError("partition must split the vertex set exactly")
    violations = _distance_conflicts(ag.graph, set(ind))
    violations.extend(Violation("cycle", c) for c in forest_cycles(ag.graph, forest))
    for v in range(n):
        lab = ag.labels[v]
        if (lab is Label.I and v not in ind) or (lab is Label.F and v not in forest):
            violations.append(Violation("extension", (v,)))
    return violations


def is_if_partition(ag: AssignedGraph, p: Partition) -> bool:
    return not verify_if_partition(ag, p)
