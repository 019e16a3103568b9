import itertools
from fractions import Fraction

import pytest

from conftest import complete, cycle, k33, path, petersen
from ifpart.discharging import detect_configurations
from ifpart.gadgets import sharpness_graph
from ifpart.generate import XorShift64Star, random_assigned_graph, random_graph
from ifpart.graph import AssignedGraph, Graph, Label, verify_if_partition
from ifpart.reductions import StaleConfiguration, applicable, reduce_configuration
from ifpart.solver import CAPS_ENV, Limits, brute_force_if_partitions, iter_if_partitions, solve_if_partition


def brute_sat(ag):
    return next(brute_force_if_partitions(ag), None) is not None


def test_small_examples():
    assert solve_if_partition(AssignedGraph.unassigned(cycle(5))).sat
    assert solve_if_partition(AssignedGraph.unassigned(petersen())).outcome in ("SAT", "UNSAT")
    assert solve_if_partition(AssignedGraph.unassigned(k33())).outcome == "UNSAT"
    assert solve_if_partition(AssignedGraph.unassigned(sharpness_graph(4).result)).outcome == "UNSAT"
    # two I labels at distance 2 can never be extended
    assert solve_if_partition(AssignedGraph.from_string(path(3), "IUI")).outcome == "UNSAT"
    assert solve_if_partition(AssignedGraph.from_string(cycle(3), "FFF")).outcome == "UNSAT"
    assert solve_if_partition(AssignedGraph.unassigned(Graph.from_edges(0, []))).sat


def test_petersen_matches_brute_force():
    ag = AssignedGraph.unassigned(petersen())
    assert solve_if_partition(ag).sat == brute_sat(ag)


def test_k4_is_unsat_but_k4_minus_edge_is_not():
    assert solve_if_partition(AssignedGraph.unassigned(complete(4))).outcome == "UNSAT"
    g = Graph.from_edges(4, [e for e in complete(4).edges if e != (0, 1)])
    res = solve_if_partition(AssignedGraph.unassigned(g))
    assert res.sat and len(res.partition.independent_part) == 1


def test_solver_matches_brute_force_on_random_instances():
    rng = XorShift64Star(31)
    for _ in range(400):
        ag = random_assigned_graph(rng, 10, 1, (1, 1, 4), Fraction(7, 2))
        want = brute_sat(ag)
        for use in (True, False):
            res = solve_if_partition(ag, use_reductions=use)
            assert res.sat == want
            if res.sat:
                assert not verify_if_partition(ag, res.partition)


def test_exhaustive_unassigned_equivalence_up_to_8():
    # every labeled graph on <= 5 vertices, plus samples on 6 to 8
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            ag = AssignedGraph.unassigned(Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1]))
            assert solve_if_partition(ag).sat == brute_sat(ag)
    rng = XorShift64Star(8)
    for _ in range(600):
        n = rng.between(6, 8)
        g = random_graph(rng, n, n, Fraction(4))
        ag = AssignedGraph.unassigned(g)
        assert solve_if_partition(ag).sat == brute_sat(ag)


def test_iter_enumerates_exactly_the_brute_force_set():
    rng = XorShift64Star(12)
    for _ in range(100):
        ag = random_assigned_graph(rng, 8)
        assert set(iter_if_partitions(ag)) == set(brute_force_if_partitions(ag))


def test_reduction_soundness_on_random_instances():
    rng = XorShift64Star(77)
    seen = set()
    steps = 0
    while steps < 500:
        ag = random_assigned_graph(rng, 11, 2, (1, 1, 4), Fraction(3))
        for config in detect_configurations(ag):
            if not applicable(ag, config):
                continue
            step = reduce_configuration(ag, config)
            steps += 1
            seen.add(step.kind)
            res = solve_if_partition(step.reduced, use_reductions=False)
            if res.sat:
                full = step.extend(res.partition)
                assert not verify_if_partition(ag, full)
            elif step.exact:
                assert not brute_sat(ag)
    assert {"C1", "C2", "CL6_DELETE", "CL7_OPEN"} <= seen


def test_stale_configuration_rejected():
    ag = AssignedGraph.unassigned(path(3))
    config = detect_configurations(ag)[0]
    other = AssignedGraph.unassigned(cycle(3))
    with pytest.raises(StaleConfiguration):
        reduce_configuration(other, config)


def test_contraction_refused_when_neighbors_adjacent():
    ag = AssignedGraph(cycle(3), (Label.F, Label.U, Label.U))
    (config,) = [c for c in detect_configurations(ag) if c.kind == "CL6_2"]
    assert not applicable(ag, config)
    with pytest.raises(ValueError):
        reduce_configuration(ag, config)


def test_caps_from_env_and_inconclusive(monkeypatch):
    monkeypatch.setenv(CAPS_ENV, "nodes=1,ms=60000")
    lim = Limits.from_env()
    assert lim.nodes == 1 and lim.ms == 60000
    big = AssignedGraph.unassigned(random_graph(XorShift64Star(4), 40, 40, Fraction(4)))
    res = solve_if_partition(big, use_reductions=False)
    assert res.outcome in ("INCONCLUSIVE", "SAT", "UNSAT")
    res = solve_if_partition(AssignedGraph.unassigned(petersen()), limits=Limits(nodes=1), use_reductions=False)
    assert res.outcome == "INCONCLUSIVE" and res.partition is None


def test_caps_env_parse_errors():
    with pytest.raises(ValueError):
        Limits.from_env({CAPS_ENV: "bogus"})
    assert Limits.from_env({}) == Limits()
