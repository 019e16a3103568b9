"""Exact potentials, minimum-potential subgraphs and maximum average degree.

All quantities are integers or :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .flow import SelectionNetwork
from .graph import AssignedGraph, Graph, Label

#: Vertex weights of the potential function, and the per-edge penalty.
WEIGHT = {Label.I: 1, Label.F: 4, Label.U: 5}
EDGE_PENALTY = 4

#: The density threshold that separates positive from nonpositive potential.
THRESHOLD = Fraction(5, 2)

BRUTE_FORCE_CAP = 20
BRUTE_FORCE_MAD_CAP = 16


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SubgraphWitness:
    vertex_set: frozenset[int]
    value: int | Fraction

    @property
    def vertices(self) -> list[int]:
        return sorted(self.vertex_set)


def _check_subset(ag_or_g, s) -> set[int]:
    s = set(s)
    n = ag_or_g.n
    bad = [v for v in s if not 0 <= v < n]
    if bad:
        raise ValueError(f"vertex {min(bad)} out of range for a graph on {n} vertices")
    return s


def potential(ag: AssignedGraph, s: Iterable[int]) -> int:
    """Potential of the subgraph induced by ``s``."""
    s = _check_subset(ag, s)
    weight = sum(WEIGHT[ag.labels[v]] for v in s)
    return weight - EDGE_PENALTY * ag.graph.induced_edge_count(s)


def whole_potential(ag: AssignedGraph) -> int:
    return sum(WEIGHT[lab] for lab in ag.labels) - EDGE_PENALTY * ag.graph.m


def _lex_key(s: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(s))


def _forced_optimum(ag: AssignedGraph, edges, weights, inside: set[int], outside: set[int]) -> int:
    """Least potential over sets containing ``inside`` and avoiding ``outside``."""
    blocked = EDGE_PENALTY * len(edges) + 1  # more than any set could gain by taking the vertex
    costs = [0 if v in inside else blocked if v in outside else w for v, w in enumerate(weights)]
    profit, _ = SelectionNetwork(ag.n, edges, EDGE_PENALTY, costs).solve()
    return sum(weights[v] for v in inside) - profit


def min_potential(ag: AssignedGraph) -> SubgraphWitness:
    """Minimum potential over nonempty vertex subsets, with the lexicographically smallest minimizer.

    The minimum comes from n selection-network solves, each with one vertex forced in.
    The witness is then built greedily in increasing vertex order: stop as soon as the
    chosen prefix is itself a minimizer, otherwise take the next vertex if some minimizer
    extends the prefix with it and skips everything passed over. Each vertex is decided
    once, so this costs at most n further solves.
    """
    n = ag.n
    if n == 0:
        raise ValueError("min_potential needs a nonempty graph")
    edges = ag.graph.sorted_edges()
    weights = [WEIGHT[lab] for lab in ag.labels]
    best = min(_forced_optimum(ag, edges, weights, {v}, set()) for v in range(n))
    chosen: set[int] = set()
    skipped: set[int] = set()
    for w in range(n):
        if chosen and potential(ag, chosen) == best:
            break
        if _forced_optimum(ag, edges, weights, chosen | {w}, skipped) == best:
            chosen.add(w)
        else:
            skipped.add(w)
    assert chosen and potential(ag, chosen) == best
    return SubgraphWitness(frozenset(chosen), best)


def all_potentials_positive(ag: AssignedGraph) -> bool:
    return min_potential(ag).value >= 1


def _edge_counts(g: Graph) -> list[int]:
    """``counts[mask]`` = number of edges induced by the vertex bitmask."""
    n = g.n
    adj = g.adj_mask
    counts = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        counts[mask] = counts[rest] + (adj[low.bit_length() - 1] & rest).bit_count()
    return counts


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def brute_force_min_potential(ag: AssignedGraph, cap: int = BRUTE_FORCE_CAP) -> SubgraphWitness:
    n = ag.n
    if n == 0:
        raise ValueError("brute_force_min_potential needs a nonempty graph")
    if n > cap:
        raise CapExceeded(f"{n} vertices exceeds the brute-force cap of {cap}")
    counts = _edge_counts(ag.graph)
    w = [WEIGHT[lab] for lab in ag.labels]
    weight = [0] * (1 << n)
    best_val = None
    best_mask = 0
    for mask in range(1, 1 << n):
        low = mask & -mask
        weight[mask] = weight[mask ^ low] + w[low.bit_length() - 1]
        val = weight[mask] - EDGE_PENALTY * counts[mask]
        if best_val is None or val < best_val:
            best_val, best_mask = val, mask
        elif val == best_val and _lex_key(_mask_to_set(mask)) < _lex_key(_mask_to_set(best_mask)):
            best_mask = mask
    return SubgraphWitness(_mask_to_set(best_mask), best_val)


def _densest_above(g: Graph, lam: Fraction, maximal: bool = False) -> tuple[int, frozenset[int]]:
    """Maximize ``q|E(S)| - p|S|`` for ``lam = p/q`` (edges per vertex)."""
    return SelectionNetwork(
        g.n, g.sorted_edges(), lam.denominator, [lam.numerator] * g.n
    ).solve(maximal=maximal)


def mad(g: Graph) -> tuple[Fraction, SubgraphWitness]:
    """Exact maximum average degree with its largest densest witness.

    Binary search on the edge density ``|E(S)|/|S|``; any two distinct achievable
    densities differ by more than ``1/n^2``, so once the bracket is that narrow its
    lower end (always an achieved density) is the optimum.
    """
    n = g.n
    if n == 0:
        raise ValueError("mad needs at least one vertex")
    lo = Fraction(1, 2) if g.m else Fraction(0)
    hi = Fraction(max((g.degree(v) for v in range(n)), default=0), 2)
    gap = Fraction(1, n * n)
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        profit, chosen = _densest_above(g, mid)
        if profit > 0:
            lo = Fraction(g.induced_edge_count(chosen), len(chosen))
        else:
            hi = mid
    profit, witness = _densest_above(g, lo, maximal=True)
    assert profit == 0 and witness
    value = 2 * lo
    assert Fraction(2 * g.induced_edge_count(witness), len(witness)) == value
    return value, SubgraphWitness(witness, value)


def brute_force_mad(g: Graph, cap: int = BRUTE_FORCE_MAD_CAP) -> tuple[Fraction, SubgraphWitness]:
    n = g.n
    if n == 0:
        raise ValueError("brute_force_mad needs at least one vertex")
    if n > cap:
        raise CapExceeded(f"{n} vertices exceeds the brute-force cap of {cap}")
    counts = _edge_counts(g)
    best = Fraction(-1)
    best_mask = 0
    for mask in range(1, 1 << n):
        d = Fraction(2 * counts[mask], mask.bit_count())
        if d > best:
            best, best_mask = d, mask
    return best, SubgraphWitness(_mask_to_set(best_mask), best)


def sparsity_fraction(ag: AssignedGraph, s: Iterable[int]) -> Fraction:
    """``(2|E| + 22|I| + 8|F|) / (|U| + 9|I| + 4|F|)`` on the subgraph induced by ``s``.

    Below 5/2 exactly when the potential of ``s`` is positive.
    """
    s = _check_subset(ag, s)
    if not s:
        raise ValueError("sparsity_fraction needs a nonempty vertex set")
    ni = len(ag.vertices_with(Label.I, s))
    nf = len(ag.vertices_with(Label.F, s))
    nu = len(s) - ni - nf
    e = ag.graph.induced_edge_count(s)
    return Fraction(2 * e + 22 * ni + 8 * nf, nu + 9 * ni + 4 * nf)


def girth_mad_bound(girth: int) -> Fraction:
    """Upper bound ``2g/(g-2)`` on Mad for planar graphs of girth at least ``g``."""
    if girth < 3:
        raise ValueError("girth must be at least 3")
    return Fraction(2 * girth, girth - 2)
