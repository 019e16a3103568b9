"""Property harness: seeded instance streams, hypothesis filters and theorem checks."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .coloring import is_star_coloring_by_components, star_coloring_from_partition, verify_star_coloring
from .discharging import audit_lemma8, canonical_form, degenerate_cycles, enumerate_low_potential_configs
from .gadgets import expand_to_unassigned
from .generate import XorShift64Star, random_assigned_graph, random_graph, random_labels, sample_seed
from .graph import AssignedGraph, Graph, Partition, format_assignment, to_graph6, verify_if_partition
from .potential import (
    THRESHOLD,
    all_potentials_positive,
    brute_force_mad,
    brute_force_min_potential,
    mad,
    min_potential,
    potential,
    whole_potential,
)
from .solver import solve_if_partition

#: How many draws per requested sample before giving up on a hypothesis filter.
ATTEMPTS_PER_SAMPLE = 200

REFERENCE_LOW_POTENTIAL = (
    ("I", ()),
    ("II", ()),
    ("IU", ((0, 1),)),
    ("IF", ((0, 1),)),
    ("IFI", ((0, 1),)),
)


def reference_low_potential_graphs() -> list[AssignedGraph]:
    return [AssignedGraph.from_string(Graph.from_edges(len(lab), e), lab) for lab, e in REFERENCE_LOW_POTENTIAL]


# ---------------------------------------------------------------------------
# instance makers (each takes a seeded rng and the vertex cap)


def _make_sparse_graph(rng: XorShift64Star, n_max: int) -> AssignedGraph:
    density = Fraction(rng.between(3, 6), 2)  # average degree between 1.5 and 3
    return AssignedGraph.unassigned(random_graph(rng, n_max, 1, density))


def _make_assigned(rng: XorShift64Star, n_max: int) -> AssignedGraph:
    density = Fraction(rng.between(2, 6), 2)
    return random_assigned_graph(rng, n_max, 1, (1, 1, 4), density)


def _make_connected_assigned(rng: XorShift64Star, n_max: int) -> AssignedGraph:
    """Random spanning tree plus extra edges; connected, so no isolated vertices when n > 1."""
    n = rng.between(2, n_max)
    edges = {(rng.below(v), v) for v in range(1, n)}
    extra = rng.between(0, n + 2)
    for _ in range(extra):
        u, v = rng.below(n), rng.below(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    g = Graph.from_edges(n, edges)
    return AssignedGraph(g, random_labels(n, rng, (1, 1, 3)))


def _make_small_assigned(rng: XorShift64Star, n_max: int) -> AssignedGraph:
    return random_assigned_graph(rng, min(n_max, 6), 1, (1, 1, 2), Fraction(2))


# ---------------------------------------------------------------------------
# checks: return None on success, else a short failure description


def check_mad_partition(ag: AssignedGraph) -> str | None:
    res = solve_if_partition(ag)
    if not res.sat:
        return f"solver returned {res.outcome}"
    if verify_if_partition(ag, res.partition):
        return "solver partition failed verification"
    return None


def check_potential_partition(ag: AssignedGraph) -> str | None:
    return check_mad_partition(ag)


def check_star4(ag: AssignedGraph) -> str | None:
    res = solve_if_partition(ag)
    if not res.sat:
        return f"solver returned {res.outcome}"
    col = star_coloring_from_partition(ag.graph, res.partition)
    if col.colors_used > 4:
        return f"{col.colors_used} colors used"
    if verify_star_coloring(ag.graph, col.coloring):
        return "coloring rejected by the path checker"
    if not is_star_coloring_by_components(ag.graph, col.coloring):
        return "coloring rejected by the component checker"
    return None


def check_lemma8(ag: AssignedGraph) -> str | None:
    verdict = audit_lemma8(ag)
    totals = verdict.trace.totals()
    if any(t != -verdict.potential for t in totals):
        return f"charge not conserved: {totals}"
    if not verdict.ok:
        return f"config-free graph with potential {verdict.potential}, negative at {verdict.negative_vertices}"
    if verdict.potential > 0 and not verdict.configurations:
        return "positive potential but no configuration detected"
    return None


def restrict(p: Partition, vertex_map) -> Partition:
    back = {new: old for old, new in enumerate(vertex_map)}
    return Partition.of(
        (back[v] for v in p.independent_part if v in back),
        (back[v] for v in p.forest_part if v in back),
    )


def check_gadget_forcing(ag: AssignedGraph) -> str | None:
    exp = expand_to_unassigned(ag)
    if not all_potentials_positive(exp.result):
        return "expansion has a nonpositive-potential subgraph"
    res = solve_if_partition(exp.result)
    if not res.sat:
        return f"expansion solver returned {res.outcome}"
    back = restrict(res.partition, exp.vertex_map)
    problems = verify_if_partition(ag, back)
    if problems:
        return f"restricted partition fails on the original: {problems[0]}"
    return None


def check_oracle_minpot(ag: AssignedGraph) -> str | None:
    fast, slow = min_potential(ag), brute_force_min_potential(ag)
    if fast.value != slow.value:
        return f"min_potential {fast.value} != brute force {slow.value}"
    if potential(ag, fast.vertex_set) != fast.value or not fast.vertex_set:
        return "witness does not reproduce its value"
    if fast.vertex_set != slow.vertex_set:
        return f"tie-break differs: {fast.vertices} vs {slow.vertices}"
    return None


def check_oracle_mad(ag: AssignedGraph) -> str | None:
    (fast, w), (slow, _) = mad(ag.graph), brute_force_mad(ag.graph)
    if fast != slow:
        return f"mad {fast} != brute force {slow}"
    s = w.vertex_set
    if not s or Fraction(2 * ag.graph.induced_edge_count(s), len(s)) != fast:
        return "witness does not reproduce its value"
    return None


# ---------------------------------------------------------------------------
# hypotheses


def mad_below_threshold(ag: AssignedGraph) -> bool:
    return mad(ag.graph)[0] < THRESHOLD


def lemma8_hypothesis(ag: AssignedGraph) -> bool:
    g = ag.graph
    return (
        ag.n > 1
        and len(g.components()) == 1
        and all(g.degree(v) >= 1 for v in range(ag.n))
        and not degenerate_cycles(ag)
        and whole_potential(ag) > 0
    )


def _always(ag: AssignedGraph) -> bool:
    return True


@dataclass(frozen=True)
class Property:
    name: str
    make: Callable[[XorShift64Star, int], AssignedGraph]
    hypothesis: Callable[[AssignedGraph], bool]
    check: Callable[[AssignedGraph], str | None]
    n_cap: int | None = None


PROPERTIES = {
    p.name: p
    for p in (
        Property("mad-partition", _make_sparse_graph, mad_below_threshold, check_mad_partition),
        Property("potential-partition", _make_assigned, all_potentials_positive, check_potential_partition),
        Property("star4", _make_sparse_graph, mad_below_threshold, check_star4),
        Property("lemma8", _make_connected_assigned, lemma8_hypothesis, check_lemma8),
        Property("gadget-forcing", _make_small_assigned, all_potentials_positive, check_gadget_forcing),
        Property("oracle-minpot", _make_assigned, _always, check_oracle_minpot, n_cap=18),
        Property("oracle-mad", _make_sparse_graph, _always, check_oracle_mad, n_cap=16),
    )
}

THEOREMS = tuple(PROPERTIES) + ("claim4",)


def draw(name: str, n_max: int, seed: int, index: int) -> AssignedGraph:
    prop = PROPERTIES[name]
    return prop.make(XorShift64Star(sample_seed(seed, index)), n_max)


def collect_instances(name: str, n_max: int, count: int, seed: int) -> list[tuple[int, AssignedGraph]]:
    """The first ``count`` draws (by sample index) that satisfy the property's hypothesis."""
    prop = PROPERTIES[name]
    out = []
    index = 0
    limit = max(count, 1) * ATTEMPTS_PER_SAMPLE
    while len(out) < count:
        if index >= limit:
            raise RuntimeError(f"only {len(out)} of {count} instances satisfied the {name} hypothesis")
        ag = draw(name, n_max, seed, index)
        if prop.hypothesis(ag):
            out.append((index, ag))
        index += 1
    return out


def _run_check(args: tuple[str, AssignedGraph]) -> str | None:
    name, ag = args
    return PROPERTIES[name].check(ag)


@dataclass
class PropertyReport:
    theorem: str
    n_max: int
    seed: int
    requested: int
    checked: int = 0
    generated: int = 0
    failures: int = 0
    counterexample: dict | None = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checked == self.requested

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "n_max": self.n_max,
            "seed": self.seed,
            "requested": self.requested,
            "generated": self.generated,
            "checked": self.checked,
            "failures": self.failures,
            "passed": self.passed,
            "counterexample": self.counterexample,
            **self.notes,
        }


def counterexample_record(ag: AssignedGraph, index: int | None, detail: str) -> dict:
    return {
        "index": index,
        "graph6": to_graph6(ag.graph),
        "assignment": format_assignment(ag),
        "detail": detail,
    }


def dump_counterexample(record: dict, theorem: str, seed: int, directory: str | Path) -> Path:
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    out = path / f"counterexample-{theorem}-seed{seed}-idx{record['index']}.json"
    out.write_text(json.dumps(record, indent=2) + "\n")
    return out


def run_claim4() -> PropertyReport:
    got = enumerate_low_potential_configs()
    want = {canonical_form(ag) for ag in reference_low_potential_graphs()}
    have = [canonical_form(ag) for ag in got]
    report = PropertyReport("claim4", 4, 0, 1, checked=1, generated=len(got))
    report.notes["configurations"] = [
        {"labels": ag.label_string(), "edges": [list(e) for e in ag.graph.sorted_edges()], "potential": whole_potential(ag)}
        for ag in got
    ]
    if len(have) != len(set(have)) or set(have) != want:
        report.failures = 1
        report.counterexample = {"index": None, "detail": "enumeration differs from the five expected graphs"}
    return report


def run_property(
    name: str,
    n_max: int,
    samples: int,
    seed: int,
    jobs: int = 1,
    artifacts_dir: str | Path | None = None,
) -> PropertyReport:
    if name == "claim4":
        return run_claim4()
    if name not in PROPERTIES:
        raise KeyError(name)
    prop = PROPERTIES[name]
    if prop.n_cap is not None:
        n_max = min(n_max, prop.n_cap)
    instances = collect_instances(name, n_max, samples, seed)
    report = PropertyReport(name, n_max, seed, samples)
    report.generated = instances[-1][0] + 1 if instances else 0
    payload = [(name, ag) for _, ag in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_check, payload, chunksize=8))
    else:
        results = [_run_check(item) for item in payload]
    for (index, ag), failure in zip(instances, results):
        report.checked += 1
        if failure is not None:
            report.failures += 1
            if report.counterexample is None:
                report.counterexample = counterexample_record(ag, index, failure)
    if report.counterexample is not None and artifacts_dir is not None:
        path = dump_counterexample(report.counterexample, name, seed, artifacts_dir)
        report.notes["artifact"] = str(path)
    return report
