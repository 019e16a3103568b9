import itertools
import warnings

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, k33, path
from ifpart.generate import XorShift64Star, random_assigned_graph
from ifpart.graph import (
    AssignedGraph,
    Graph,
    InputWarning,
    Label,
    ParseError,
    Partition,
    format_assignment,
    i_label_conflicts,
    is_if_partition,
    parse_assignment,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    serialize_graph,
    to_edge_list,
    to_graph6,
    verify_if_partition,
)


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


@pytest.mark.parametrize("n", range(0, 7))
def test_graph6_and_edge_list_round_trip_exhaustive(n):
    for g in all_graphs(n):
        assert parse_graph6(to_graph6(g)) == g
        assert parse_edge_list(to_edge_list(g)) == g


def test_graph6_round_trip_n7_sampled():
    rng = XorShift64Star(7)
    for _ in range(300):
        edges = [(i, j) for i in range(7) for j in range(i + 1, 7) if rng.below(2)]
        g = Graph.from_edges(7, edges)
        assert parse_graph6(to_graph6(g)) == g
        assert parse_edge_list(to_edge_list(g)) == g


def test_graph6_matches_networkx():
    rng = XorShift64Star(11)
    for _ in range(200):
        n = rng.between(0, 70)
        pairs = [(rng.below(n), rng.below(n)) for _ in range(n)] if n else []
        g = Graph.from_edges(n, [(u, v) for u, v in pairs if u != v])
        ours = to_graph6(g)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges)
        assert ours == nx.to_graph6_bytes(h, header=False).decode().strip()
        back = nx.from_graph6_bytes(ours.encode())
        assert sorted(tuple(sorted(e)) for e in back.edges) == g.sorted_edges()


def test_graph6_known_strings():
    assert to_graph6(complete(4)) == "C~"
    assert to_graph6(cycle(5)) == "Dhc"
    assert parse_graph6(">>graph6<<C~\n") == complete(4)
    assert to_graph6(Graph.from_edges(0, [])) == "?"


def test_graph6_large_header():
    g = path(100)
    s = to_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s) == g


@pytest.mark.parametrize("bad", ["C~~", "C ", "C\x7f", ""])
def test_graph6_malformed(bad):
    with pytest.raises(ParseError):
        parse_graph6(bad)


def test_edge_list_details():
    g = parse_edge_list("# a square\n4\n0 1\n1 2 # inline\n2 3\n3 0\n")
    assert g == cycle(4)
    with pytest.warns(InputWarning):
        assert parse_edge_list("0 1\n1 0\n") == path(2)
    with pytest.raises(ParseError):
        parse_edge_list("1 1\n")
    with pytest.raises(ParseError):
        parse_edge_list("0 x\n")
    assert parse_edge_list("5\n").n == 5


def test_parse_graph_dispatch():
    assert parse_graph("C~", "graph6") == complete(4)
    assert parse_graph("0 1\n", "edges") == path(2)
    assert serialize_graph(path(2), "edges") == to_edge_list(path(2))
    with pytest.raises(ValueError):
        parse_graph("C~", "dot")


def test_assignment_round_trip_and_warning():
    g = path(4)
    ag = AssignedGraph.from_string(g, "IUFU")
    assert parse_assignment(format_assignment(ag), g) == ag
    with pytest.warns(InputWarning):
        close = parse_assignment("0 I\n2 I\n", g)
    assert i_label_conflicts(close)
    with pytest.raises(ParseError):
        parse_assignment("9 I\n", g)


def test_graph_basics():
    g = k33()
    assert (g.n, g.m) == (6, 9)
    assert all(g.degree(v) == 3 for v in range(6))
    assert not g.is_forest()
    assert path(5).is_forest()
    sub, order = g.induced([0, 3, 4])
    assert sub.m == 2 and order == [0, 3, 4]
    assert Graph.from_edges(5, [(0, 1), (3, 4)]).components() == [[0, 1], [2], [3, 4]]


def test_verify_examples():
    c4 = AssignedGraph.unassigned(cycle(4))
    assert is_if_partition(c4, Partition.of([0], [1, 2, 3]))
    kinds = {v.kind for v in verify_if_partition(c4, Partition.of([], [0, 1, 2, 3]))}
    assert kinds == {"cycle"}
    kinds = {v.kind for v in verify_if_partition(c4, Partition.of([0, 2], [1, 3]))}
    assert kinds == {"distance"}
    fixed = AssignedGraph.from_string(cycle(4), "FUUU")
    kinds = {v.kind for v in verify_if_partition(fixed, Partition.of([0], [1, 2, 3]))}
    assert "extension" in kinds
    with pytest.raises(ValueError):
        verify_if_partition(c4, Partition.of([0], [1, 2]))


def distances(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return dict(nx.all_pairs_shortest_path_length(h))


def naive_valid(ag, p):
    dist = distances(ag.graph)
    ind = sorted(p.independent_part)
    if any(dist[u].get(v, 99) <= 2 for u, v in itertools.combinations(ind, 2)):
        return False
    h = nx.Graph()
    h.add_nodes_from(p.forest_part)
    h.add_edges_from(e for e in ag.graph.edges if set(e) <= p.forest_part)
    if h.number_of_nodes() and not nx.is_forest(h):
        return False
    return all(
        (lab is not Label.I or v in p.independent_part) and (lab is not Label.F or v in p.forest_part)
        for v, lab in enumerate(ag.labels)
    )


def test_verify_agrees_with_naive_check():
    rng = XorShift64Star(2024)
    for _ in range(500):
        ag = random_assigned_graph(rng, 9)
        flags = [rng.below(2) == 1 for _ in range(ag.n)]
        p = Partition.from_flags(flags)
        assert (not verify_if_partition(ag, p)) == naive_valid(ag, p)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.data())
def test_distance_violations_are_real(n, data):
    edges = data.draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])))
    g = Graph.from_edges(n, edges)
    ind = data.draw(st.sets(st.integers(0, n - 1)))
    ag = AssignedGraph.unassigned(g)
    p = Partition.of(ind, set(range(n)) - ind)
    dist = distances(g)
    for v in verify_if_partition(ag, p):
        if v.kind == "distance":
            a, b = v.vertices
            assert dist[a].get(b, 99) <= 2
            assert len(v.path) - 1 == dist[a][b]


def test_no_warning_on_clean_input():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_edge_list("3\n0 1\n1 2\n")
