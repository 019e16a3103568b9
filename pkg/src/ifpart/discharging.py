"""Threads, reducible configurations, the three charge rules and the config-free charge audit."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import AssignedGraph, Graph, Label
from .potential import WEIGHT, potential, whole_potential

CONFIG_KINDS = (
    "C1",
    "C2",
    "C3",
    "CL6_1",
    "CL6_2",
    "CL7",
    "CL8",
    "CL9",
    "DEGENERATE_ISOLATED",
    "DEGENERATE_ALL_U_CYCLE",
)


@dataclass(frozen=True)
class Thread:
    """Maximal path of degree-2 U vertices.

    ``internal_vertices`` runs from the end next to ``borders[0]``; an open thread's
    last internal vertex is adjacent to ``borders[1]``, a closed thread's to ``borders[0]``.
    """

    internal_vertices: tuple[int, ...]
    borders: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.internal_vertices)

    @property
    def kind(self) -> str:
        return "closed" if len(self.borders) == 1 else "open"

    @property
    def closed(self) -> bool:
        return len(self.borders) == 1

    def border_of(self, end: int) -> int:
        """Border adjacent to internal vertex at position ``end`` (0 or -1)."""
        return self.borders[0] if end == 0 or self.closed else self.borders[1]

    def far_border(self, v: int) -> int:
        """For an open thread, the border other than ``v``."""
        a, b = self.borders
        return b if a == v else a

    def to_json(self) -> dict:
        return {"internal": list(self.internal_vertices), "borders": list(self.borders), "kind": self.kind}


def _thread_scan(ag: AssignedGraph) -> tuple[list[Thread], list[tuple[int, ...]]]:
    g = ag.graph
    inner = {v for v in range(ag.n) if ag.labels[v] is Label.U and g.degree(v) == 2}
    inner_nbrs = {v: sorted(w for w in g.adj[v] if w in inner) for v in inner}
    seen: set[int] = set()
    threads, cycles = [], []
    for s in sorted(inner):
        if s in seen:
            continue
        # flood the component of s among inner vertices
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for w in inner_nbrs[x]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        ends = sorted(v for v in comp if len(inner_nbrs[v]) < 2)
        start = ends[0] if ends else min(comp)
        path = [start]
        prev = None
        while len(path) < len(comp):
            nxt = [w for w in inner_nbrs[path[-1]] if w != prev]
            prev = path[-1]
            path.append(nxt[0])
        if not ends:
            if len(path) > 2 and path[1] > path[-1]:
                path = [path[0]] + path[:0:-1]
            cycles.append(tuple(path))
            continue
        if len(path) == 1:
            a, b = sorted(g.adj[start])
            threads.append(Thread((start,), (a, b)))
            continue
        a = next(w for w in g.adj[path[0]] if w not in inner)
        b = next(w for w in g.adj[path[-1]] if w not in inner)
        if a == b:
            threads.append(Thread(tuple(path), (a,)))
        else:
            if a > b:
                path.reverse()
                a, b = b, a
            threads.append(Thread(tuple(path), (a, b)))
    threads.sort(key=lambda t: t.internal_vertices)
    return threads, cycles


def find_threads(ag: AssignedGraph) -> list[Thread]:
    """Every maximal thread; degree-2 U vertices on all-U cycle components are left out."""
    return _thread_scan(ag)[0]


def degenerate_cycles(ag: AssignedGraph) -> list[tuple[int, ...]]:
    return _thread_scan(ag)[1]


def thread_incidences(threads: list[Thread]) -> dict[int, list[tuple[Thread, int]]]:
    """Map border vertex -> list of ``(thread, end)``; closed threads appear twice."""
    inc: dict[int, list[tuple[Thread, int]]] = {}
    for t in threads:
        if t.closed:
            inc.setdefault(t.borders[0], []).extend([(t, 0), (t, -1)])
        else:
            inc.setdefault(t.borders[0], []).append((t, 0))
            inc.setdefault(t.borders[1], []).append((t, -1))
    return inc


def incidence_count(inc: dict[int, list[tuple[Thread, int]]], v: int, length: int) -> int:
    return sum(1 for t, _ in inc.get(v, ()) if t.length == length)


@dataclass(frozen=True)
class ConfigurationReport:
    kind: str
    anchor: int
    vertices: tuple[int, ...]
    threads: tuple[Thread, ...] = ()

    def to_json(self) -> dict:
        out = {"kind": self.kind, "anchor": self.anchor, "vertices": list(self.vertices)}
        if self.threads:
            out["threads"] = [t.to_json() for t in self.threads]
        return out


def _unique_threads(pairs) -> tuple[Thread, ...]:
    out = []
    for t, _ in pairs:
        if t not in out:
            out.append(t)
    return tuple(out)


def detect_configurations(ag: AssignedGraph) -> list[ConfigurationReport]:
    g = ag.graph
    labels = ag.labels
    threads, cycles = _thread_scan(ag)
    inc = thread_incidences(threads)
    reports: list[ConfigurationReport] = []

    for v in range(ag.n):
        d = g.degree(v)
        lab = labels[v]
        nbrs = tuple(sorted(g.adj[v]))
        if d == 0:
            reports.append(ConfigurationReport("DEGENERATE_ISOLATED", v, (v,)))
        elif d == 1 and lab is Label.U:
            reports.append(ConfigurationReport("C1", v, (v,) + nbrs))
        elif d == 1 and lab is Label.F:
            reports.append(ConfigurationReport("CL6_1", v, (v,) + nbrs))
        elif d == 2 and lab is Label.F:
            reports.append(ConfigurationReport("CL6_2", v, (v,) + nbrs))

        here = inc.get(v, [])
        two = [(t, e) for t, e in here if t.length == 2]
        one = [(t, e) for t, e in here if t.length == 1]
        if lab is Label.U and d == 4 and len(two) == 4:
            ts = _unique_threads(two)
            reports.append(ConfigurationReport("C3", v, (v,) + _internals(ts), ts))
        if d == 3 and lab is not Label.I and two and not any(labels[w] is Label.I for w in nbrs):
            ts = _unique_threads(two)
            reports.append(ConfigurationReport("CL7", v, (v,) + _internals(ts), ts))
        if (
            lab is Label.U
            and d == 3
            and len(one) == 3
            and all(labels[t.far_border(v)] is not Label.I for t, _ in one)
        ):
            ts = _unique_threads(one)
            reports.append(ConfigurationReport("CL8", v, (v,) + _internals(ts), ts))
        if (
            lab is Label.U
            and d == 4
            and len(two) == 3
            and len(one) == 1
            and labels[one[0][0].far_border(v)] is not Label.I
        ):
            ts = _unique_threads(two + one)
            reports.append(ConfigurationReport("CL9", v, (v,) + _internals(ts), ts))

    for t in threads:
        if t.length >= 3:
            reports.append(ConfigurationReport("C2", t.internal_vertices[1], t.internal_vertices, (t,)))
    for cyc in cycles:
        reports.append(ConfigurationReport("DEGENERATE_ALL_U_CYCLE", cyc[0], cyc))

    order = {k: i for i, k in enumerate(CONFIG_KINDS)}
    reports.sort(key=lambda r: (order[r.kind], r.anchor, r.vertices))
    return reports


def _internals(ts) -> tuple[int, ...]:
    return tuple(v for t in ts for v in t.internal_vertices)


def is_degenerate(report: ConfigurationReport) -> bool:
    return report.kind.startswith("DEGENERATE")


# ---------------------------------------------------------------------------
# charges


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: int
    target: int
    amount: Fraction

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "from": self.source,
            "to": self.target,
            "amount_num": self.amount.numerator,
            "amount_den": self.amount.denominator,
        }


@dataclass(frozen=True)
class ChargeTrace:
    """``mu[i][v]`` is the charge of v after rule i (``mu[0]`` is the initial charge)."""

    mu: tuple[tuple[Fraction, ...], ...]
    transfers: tuple[Transfer, ...] = field(default=())

    @property
    def final(self) -> tuple[Fraction, ...]:
        return self.mu[-1]

    def totals(self) -> list[Fraction]:
        return [sum(stage, Fraction(0)) for stage in self.mu]

    def to_json(self) -> dict:
        out = {f"mu{i}": [str(x) for x in stage] for i, stage in enumerate(self.mu)}
        out["transfers"] = [t.to_json() for t in self.transfers]
        return out


def _mu0(ag: AssignedGraph) -> tuple[Fraction, ...]:
    return tuple(Fraction(2 * ag.graph.degree(v) - WEIGHT[ag.labels[v]]) for v in range(ag.n))


def initial_charge(ag: AssignedGraph) -> ChargeTrace:
    mu0 = _mu0(ag)
    assert sum(mu0, Fraction(0)) == -whole_potential(ag)
    return ChargeTrace((mu0,))


def _apply(stage: tuple[Fraction, ...], moves: list[Transfer]) -> tuple[Fraction, ...]:
    out = list(stage)
    for t in moves:
        out[t.source] -= t.amount
        out[t.target] += t.amount
    return tuple(out)


def run_discharging(ag: AssignedGraph) -> ChargeTrace:
    """Apply R1, R2, R3 in order, each reading the charges frozen after the previous rule."""
    g = ag.graph
    threads = find_threads(ag)
    mu0 = _mu0(ag)
    target = -whole_potential(ag)

    r1 = [
        Transfer("R1", v, w, Fraction(1))
        for v in range(ag.n)
        if g.degree(v) > 0 and mu0[v] >= g.degree(v)
        for w in sorted(g.adj[v])
    ]
    mu1 = _apply(mu0, r1)

    half = Fraction(1, 2)
    r2 = []
    for t in threads:
        if t.length == 1:
            x = t.internal_vertices[0]
            if mu1[x] < 0:
                r2.extend(Transfer("R2", w, x, half) for w in sorted(g.adj[x]))
    mu2 = _apply(mu1, r2)

    r3 = []
    for t in threads:
        if t.length == 2:
            for end in (0, -1):
                x = t.internal_vertices[end]
                if mu2[x] < 0:
                    r3.append(Transfer("R3", t.border_of(end), x, Fraction(1)))
    mu3 = _apply(mu2, r3)

    for stage in (mu0, mu1, mu2, mu3):
        assert sum(stage, Fraction(0)) == target, "charge not conserved"
    return ChargeTrace((mu0, mu1, mu2, mu3), tuple(r1 + r2 + r3))


@dataclass(frozen=True)
class AuditVerdict:
    """``status`` is ``"holds"``, ``"violated"`` or ``"vacuous"`` (configurations present)."""

    status: str
    potential: int
    configurations: tuple[ConfigurationReport, ...]
    trace: ChargeTrace
    negative_vertices: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status != "violated"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "potential": self.potential,
            "negative_vertices": list(self.negative_vertices),
        }


def audit_lemma8(ag: AssignedGraph) -> AuditVerdict:
    configs = tuple(detect_configurations(ag))
    trace = run_discharging(ag)
    rho = whole_potential(ag)
    negative = tuple(v for v, x in enumerate(trace.final) if x < 0)
    if configs:
        return AuditVerdict("vacuous", rho, configs, trace, negative)
    status = "holds" if rho <= 0 and not negative else "violated"
    return AuditVerdict(status, rho, configs, trace, negative)


# ---------------------------------------------------------------------------
# small low-potential configurations


def canonical_form(ag: AssignedGraph) -> tuple:
    """Label-respecting isomorphism invariant by brute force over vertex orders (small graphs)."""
    n = ag.n
    best = None
    for perm in itertools.permutations(range(n)):
        pos = {v: i for i, v in enumerate(perm)}
        labels = tuple(ag.labels[v].value for v in perm)
        edges = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in ag.graph.edges))
        key = (n, labels, edges)
        if best is None or key < best:
            best = key
    return best


def enumerate_low_potential_configs(max_size: int = 4, below: int = 3) -> list[AssignedGraph]:
    """Assigned graphs with ``|V|+|E| <= max_size`` and ``0 < potential < below`` all of whose
    nonempty subgraphs have positive potential, one per label-respecting isomorphism class."""
    found: dict[tuple, AssignedGraph] = {}
    for n in range(1, max_size + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for m in range(0, max_size - n + 1):
            for edges in itertools.combinations(pairs, m):
                g = Graph.from_edges(n, edges)
                for letters in itertools.product("IFU", repeat=n):
                    ag = AssignedGraph.from_string(g, "".join(letters))
                    rho = whole_potential(ag)
                    if not 0 < rho < below:
                        continue
                    if not _all_subsets_positive(ag):
                        continue
                    key = canonical_form(ag)
                    if key not in found:
                        found[key] = _from_canonical(key)
    return [found[k] for k in sorted(found)]


def _all_subsets_positive(ag: AssignedGraph) -> bool:
    n = ag.n
    return all(
        potential(ag, s) > 0 for k in range(1, n + 1) for s in itertools.combinations(range(n), k)
    )


def _from_canonical(key: tuple) -> AssignedGraph:
    n, labels, edges = key
    return AssignedGraph.from_string(Graph.from_edges(n, edges), "".join(labels))
