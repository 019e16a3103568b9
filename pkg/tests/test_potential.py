from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, k33, path, petersen
from ifpart.gadgets import sharpness_graph
from ifpart.generate import XorShift64Star, random_assigned_graph, random_graph
from ifpart.graph import AssignedGraph, Graph
from ifpart.potential import (
    THRESHOLD,
    CapExceeded,
    all_potentials_positive,
    brute_force_mad,
    brute_force_min_potential,
    girth_mad_bound,
    mad,
    min_potential,
    potential,
    sparsity_fraction,
    whole_potential,
)


def test_potential_examples():
    ag = AssignedGraph.from_string(path(3), "IFU")
    assert potential(ag, [0, 1, 2]) == 1 + 4 + 5 - 8
    assert potential(ag, [0, 2]) == 6  # induced: no edge between 0 and 2
    assert whole_potential(AssignedGraph.unassigned(complete(4))) == 20 - 24
    assert whole_potential(AssignedGraph.unassigned(sharpness_graph(5).result)) == 0
    with pytest.raises(ValueError):
        potential(ag, [7])


def test_min_potential_examples():
    w = min_potential(AssignedGraph.unassigned(complete(4)))
    assert (w.value, w.vertices) == (-4, [0, 1, 2, 3])
    w = min_potential(AssignedGraph.from_string(Graph.from_edges(2, []), "UI"))
    assert (w.value, w.vertices) == (1, [1])
    assert all_potentials_positive(AssignedGraph.unassigned(cycle(6)))
    assert not all_potentials_positive(AssignedGraph.unassigned(k33()))


def test_mad_examples():
    assert mad(cycle(7))[0] == 2
    assert mad(complete(4))[0] == 3
    assert mad(k33())[0] == 3
    assert mad(petersen())[0] == 3
    assert mad(path(5))[0] == Fraction(8, 5)
    assert mad(Graph.from_edges(3, []))[0] == 0
    value, w = mad(Graph.from_edges(7, [(0, 1), (1, 2), (2, 0), (4, 5)]))
    assert value == 2 and w.vertices == [0, 1, 2]
    for k in range(3, 9):
        value, w = mad(sharpness_graph(k).result)
        assert value == THRESHOLD and len(w.vertices) == 4 * k  # the maximal densest set is everything


def test_min_potential_matches_brute_force():
    rng = XorShift64Star(5)
    for _ in range(150):
        ag = random_assigned_graph(rng, 12, 1, (1, 1, 3), Fraction(4))
        fast, slow = min_potential(ag), brute_force_min_potential(ag)
        assert fast.value == slow.value
        assert fast.vertices == slow.vertices  # both break ties lexicographically
        assert potential(ag, fast.vertex_set) == fast.value


def test_mad_matches_brute_force():
    rng = XorShift64Star(6)
    for _ in range(150):
        g = random_graph(rng, 11, 1, Fraction(4))
        (fast, w), (slow, _) = mad(g), brute_force_mad(g)
        assert fast == slow
        assert Fraction(2 * g.induced_edge_count(w.vertex_set), len(w.vertex_set)) == fast


def test_brute_force_caps():
    with pytest.raises(CapExceeded):
        brute_force_mad(path(17))
    with pytest.raises(CapExceeded):
        brute_force_min_potential(AssignedGraph.unassigned(path(21)))


def test_sparsity_fraction_sign_matches_potential():
    rng = XorShift64Star(8)
    for _ in range(300):
        ag = random_assigned_graph(rng, 9, 1, (1, 1, 3), Fraction(4))
        s = [v for v in range(ag.n) if rng.below(3)] or [0]
        rho = potential(ag, s)
        assert (rho > 0) == (sparsity_fraction(ag, s) < Fraction(5, 2))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9), st.data())
def test_potential_drops_with_added_edge(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not pairs:
        return
    edges = data.draw(st.sets(st.sampled_from(pairs)))
    labels = data.draw(st.text(alphabet="IFU", min_size=n, max_size=n))
    extra = data.draw(st.sampled_from(pairs))
    a = AssignedGraph.from_string(Graph.from_edges(n, edges), labels)
    b = AssignedGraph.from_string(Graph.from_edges(n, set(edges) | {extra}), labels)
    assert min_potential(b).value <= min_potential(a).value
    assert mad(b.graph)[0] >= mad(a.graph)[0]


def test_mad_below_threshold_iff_unassigned_potentials_positive():
    rng = XorShift64Star(9)
    for _ in range(300):
        g = random_graph(rng, 10, 1, Fraction(3))
        assert (mad(g)[0] < THRESHOLD) == all_potentials_positive(AssignedGraph.unassigned(g))


@pytest.mark.parametrize(
    "girth,bound",
    [(6, 3), (7, Fraction(14, 5)), (8, Fraction(8, 3)), (10, Fraction(5, 2)), (13, Fraction(26, 11)), (14, Fraction(7, 3))],
)
def test_girth_bound(girth, bound):
    assert girth_mad_bound(girth) == bound


def test_girth_bound_rejects_small():
    with pytest.raises(ValueError):
        girth_mad_bound(2)
