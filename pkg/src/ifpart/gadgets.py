"""Forcing gadgets that trade I/F labels for plain structure, and the tightness family."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import AssignedGraph, Graph, Label

F_GADGET_ROLES = ("a", "b", "c")
F_GADGET_EDGES = (("a", "b"), ("b", "c"), ("c", "a"), ("host", "a"))

I_GADGET_ROLES = ("a", "b", "c", "d", "e", "f", "g", "h")
I_GADGET_EDGES = (
    ("a", "b"), ("b", "c"), ("c", "a"),
    ("f", "g"), ("g", "h"), ("h", "f"),
    ("a", "d"), ("d", "e"), ("e", "f"),
    ("host", "d"), ("host", "e"),
)  # fmt: skip


@dataclass(frozen=True)
class GadgetExpansion:
    result: AssignedGraph
    vertex_map: tuple[int, ...]
    gadget_registry: dict[int, tuple[tuple[str, int], ...]] = field(default_factory=dict)

    def roles(self, host: int) -> dict[str, int]:
        return dict(self.gadget_registry[host])


def _attach(ag: AssignedGraph, v: int, roles, edges) -> tuple[AssignedGraph, tuple[tuple[str, int], ...]]:
    n = ag.n
    place = {"host": v}
    place.update({r: n + i for i, r in enumerate(roles)})
    new_edges = list(ag.graph.edges) + [(place[x], place[y]) for x, y in edges]
    labels = list(ag.labels)
    labels[v] = Label.U
    labels.extend([Label.U] * len(roles))
    g = Graph.from_edges(n + len(roles), new_edges)
    return AssignedGraph(g, tuple(labels)), tuple((r, place[r]) for r in roles)


def _expansion(ag, result, registry) -> GadgetExpansion:
    return GadgetExpansion(result, tuple(range(ag.n)), registry)


def attach_f_gadget(ag: AssignedGraph, v: int) -> GadgetExpansion:
    """Hang a triangle off ``v`` by one edge; ``v`` becomes U but is forced to the forest side."""
    if ag.labels[v] is not Label.F:
        raise ValueError(f"vertex {v} is labeled {ag.labels[v].value}, not F")
    result, placed = _attach(ag, v, F_GADGET_ROLES, F_GADGET_EDGES)
    return _expansion(ag, result, {v: placed})


def attach_i_gadget(ag: AssignedGraph, v: int) -> GadgetExpansion:
    """Two triangles joined by the path a-d-e-f, with ``v`` adjacent to d and e."""
    if ag.labels[v] is not Label.I:
        raise ValueError(f"vertex {v} is labeled {ag.labels[v].value}, not I")
    result, placed = _attach(ag, v, I_GADGET_ROLES, I_GADGET_EDGES)
    return _expansion(ag, result, {v: placed})


def expand_to_unassigned(ag: AssignedGraph) -> GadgetExpansion:
    """Replace every label by its gadget: F vertices first, then I vertices, each in index order."""
    current = ag
    registry: dict[int, tuple[tuple[str, int], ...]] = {}
    for v in sorted(ag.F):
        step = attach_f_gadget(current, v)
        current = step.result
        registry.update(step.gadget_registry)
    for v in sorted(ag.I):
        step = attach_i_gadget(current, v)
        current = step.result
        registry.update(step.gadget_registry)
    return GadgetExpansion(current, tuple(range(ag.n)), registry)


@dataclass(frozen=True)
class SharpnessGraph:
    cycle_length: int
    result: Graph

    def cycle(self) -> list[int]:
        return list(range(self.cycle_length))

    def pendant_triangle(self, i: int) -> tuple[int, int, int]:
        """``(a, b, c)`` hung from cycle vertex ``i``; ``a`` is the one adjacent to it."""
        base = self.cycle_length + 3 * i
        return base, base + 1, base + 2


def sharpness_graph(k: int) -> SharpnessGraph:
    """Cycle on ``k`` vertices with a triangle hung from every cycle vertex by one edge.

    Vertices ``0..k-1`` are the cycle; triangle ``i`` occupies ``k+3i .. k+3i+2``.
    """
    if k < 3:
        raise ValueError("the cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % k) for i in range(k)]
    for i in range(k):
        a, b, c = k + 3 * i, k + 3 * i + 1, k + 3 * i + 2
        edges += [(i, a), (a, b), (b, c), (c, a)]
    return SharpnessGraph(k, Graph.from_edges(4 * k, edges))
