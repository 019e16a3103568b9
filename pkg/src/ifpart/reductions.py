"""Reducible configurations turned into (smaller instance, extender) pairs.

Each step deletes the configuration's interior, possibly relabels up to three
bordering vertices from U to F (or contracts an edge), and knows how to lift an
I,F-partition of the smaller instance back to the original one. Deletion-only
steps are *exact*: the smaller instance is solvable iff the original is, since
restricting a partition to an induced subgraph keeps it valid. The relabeling
and contracting steps only go one way, so callers must fall back to search when
the smaller instance is unsolvable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .discharging import ConfigurationReport, Thread, detect_configurations
from .graph import AssignedGraph, Graph, Label, Partition, verify_if_partition

REDUCTION_KINDS = (
    "C1",
    "C2",
    "C3",
    "CL6_DELETE",
    "CL6_CONTRACT",
    "CL7_OPEN",
    "CL7_CLOSED",
    "CL8",
    "CL9",
)

EXACT_KINDS = frozenset({"C1", "C2", "C3", "CL6_DELETE"})


class StaleConfiguration(ValueError):
    pass


class ExtensionError(RuntimeError):
    """An extender produced an invalid partition; indicates a bug, never expected."""


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    original: AssignedGraph
    reduced: AssignedGraph
    vertex_map: tuple[int, ...]  # reduced vertex -> original vertex
    removed: frozenset[int]
    reassigned: frozenset[int]
    extender: Callable[[set[int], set[int]], tuple[set[int], set[int]]] = field(repr=False, compare=False)

    @property
    def exact(self) -> bool:
        return self.kind in EXACT_KINDS

    def lift(self, p: Partition) -> tuple[set[int], set[int]]:
        ind = {self.vertex_map[v] for v in p.independent_part}
        forest = {self.vertex_map[v] for v in p.forest_part}
        return ind, forest

    def extend(self, p: Partition) -> Partition:
        """Map a partition of ``reduced`` to a verified partition of ``original``."""
        ind, forest = self.extender(*self.lift(p))
        out = Partition.of(ind, forest)
        problems = verify_if_partition(self.original, out)
        if problems:
            raise ExtensionError(f"{self.kind} extension failed: {problems[:3]}")
        return out


def _build(
    ag: AssignedGraph,
    kind: str,
    removed: set[int],
    relabel: set[int] = frozenset(),
    extender=None,
    extra_edge: tuple[int, int] | None = None,
) -> ReductionStep:
    relabel = {v for v in relabel if ag.labels[v] is Label.U and v not in removed}
    base = ag.relabel({v: Label.F for v in relabel}) if relabel else ag
    keep = [v for v in range(ag.n) if v not in removed]
    sub, order = base.induced(keep)
    if extra_edge is not None:
        index = {v: i for i, v in enumerate(order)}
        u, x = extra_edge
        g = Graph.from_edges(sub.n, list(sub.graph.edges) + [(index[u], index[x])])
        sub = AssignedGraph(g, sub.labels)
    return ReductionStep(kind, ag, sub, tuple(order), frozenset(removed), frozenset(relabel), extender)


def _other(g: Graph, x: int, not_this: int) -> int:
    (w,) = [y for y in g.adj[x] if y != not_this]
    return w


def reduce_configuration(ag: AssignedGraph, config: ConfigurationReport, *, check: bool = True) -> ReductionStep:
    """Build the reduction for ``config`` (as produced by :func:`detect_configurations` on ``ag``)."""
    if check and config not in detect_configurations(ag):
        raise StaleConfiguration(f"{config.kind} at {config.anchor} is not present in this graph")
    g = ag.graph
    v = config.anchor
    kind = config.kind

    if kind in ("C1", "CL6_1"):

        def ext(ind, forest):
            return ind, forest | {v}

        return _build(ag, "C1" if kind == "C1" else "CL6_DELETE", {v}, extender=ext)

    if kind == "CL6_2":
        u, x = sorted(g.adj[v])
        if g.has_edge(u, x):
            raise ValueError(f"cannot contract at F 2-vertex {v}: its neighbors {u} and {x} are adjacent")

        def ext(ind, forest):
            return ind, forest | {v}

        return _build(ag, "CL6_CONTRACT", {v}, extender=ext, extra_edge=(u, x))

    if kind == "C2":
        (t,) = config.threads
        k = t.internal_vertices.index(v)
        x, y = t.internal_vertices[k - 1], t.internal_vertices[k + 1]
        a, b = _other(g, x, v), _other(g, y, v)

        def ext(ind, forest):
            if a in ind or b in ind:
                return ind, forest | {x, v, y}
            return ind | {v}, forest | {x, y}

        return _build(ag, "C2", {x, v, y}, extender=ext)

    if kind in ("C3", "CL9"):
        interior = {w for t in config.threads for w in t.internal_vertices}
        relabel = set()
        if kind == "CL9":
            (one,) = [t for t in config.threads if t.length == 1]
            relabel = {one.far_border(v)}

        def ext(ind, forest):
            return ind | {v}, forest | interior

        return _build(ag, kind, interior | {v}, relabel, ext)

    if kind == "CL8":
        interior = {w for t in config.threads for w in t.internal_vertices}
        far = {t.far_border(v) for t in config.threads}

        def ext(ind, forest):
            return ind | {v}, forest | interior

        return _build(ag, "CL8", interior | {v}, far, ext)

    if kind == "CL7":
        t = _pick_cl7_thread(config)
        if t.closed:
            y, z = t.internal_vertices
            (a,) = [w for w in g.adj[v] if w not in (y, z)]

            def ext(ind, forest):
                return ind | {y}, forest | {v, z}

            return _build(ag, "CL7_CLOSED", {v, y, z}, {a}, ext)
        # orient so that y is next to v
        y, z = t.internal_vertices if t.borders[0] == v else t.internal_vertices[::-1]
        c = t.far_border(v)
        a, b = [w for w in sorted(g.adj[v]) if w != y]

        def ext(ind, forest):
            if v in ind or c in ind:
                return ind, forest | {y, z}
            return ind | {y}, forest | {z}

        return _build(ag, "CL7_OPEN", {y, z}, {a, b}, ext)

    raise ValueError(f"configuration kind {kind} has no reduction")


def _pick_cl7_thread(config: ConfigurationReport) -> Thread:
    # a closed 2-thread at a 3-vertex uses two of its three edges; prefer it when present
    closed = [t for t in config.threads if t.closed]
    return closed[0] if closed else config.threads[0]


def applicable(ag: AssignedGraph, config: ConfigurationReport) -> bool:
    """Whether ``reduce_configuration`` accepts this (fresh) configuration."""
    if config.kind.startswith("DEGENERATE"):
        return False
    if config.kind == "CL6_2":
        u, x = sorted(ag.graph.adj[config.anchor])
        return not ag.graph.has_edge(u, x)
    return True

