"""Command line: ``ifpart analyze ...``, ``ifpart check ...`` and ``ifpart generate ...``.

Exit codes: 0 success / SAT / property holds, 1 UNSAT / property refuted,
2 usage or parse error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .coloring import STAR_CHROMATIC_CAP, star_chromatic_number, star_coloring_from_partition
from .discharging import audit_lemma8
from .gadgets import expand_to_unassigned, sharpness_graph
from .generate import GeneratorError, GeneratorSpec, generate
from .graph import AssignedGraph, ParseError, parse_assignment, parse_graph, serialize_graph
from .harness import THEOREMS, run_property
from .potential import CapExceeded, mad, min_potential
from .solver import Limits, solve_if_partition

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

_EDGE_LINE = re.compile(rb"^[\d\s]+$")


@dataclass
class RunReport:
    command: str
    input_digest: str
    payload: dict | str
    exit_code: int
    wall_time: float

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_sha256": self.input_digest,
            "outcome": self.payload,
            "exit_code": self.exit_code,
            "wall_time_s": round(self.wall_time, 6),
        }


class UsageError(Exception):
    pass


def _sniff_format(data: bytes) -> str:
    for raw in data.splitlines():
        line = raw.split(b"#", 1)[0].strip()
        if line:
            return "edge_list" if _EDGE_LINE.match(line) else "graph6"
    return "graph6"


def _read_bytes(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> tuple[AssignedGraph, bytes]:
    data = _read_bytes(args.graph)
    fmt = args.format
    if fmt == "auto":
        fmt = _sniff_format(data)
    g = parse_graph(data, fmt)
    digest_input = data
    if getattr(args, "assign", None):
        text = _read_bytes(args.assign)
        digest_input += b"\0" + text
        ag = parse_assignment(text, g)
    else:
        ag = AssignedGraph.unassigned(g)
    return ag, digest_input


def _emit(payload) -> None:
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        sys.stdout.write(json.dumps(payload) + "\n")
    sys.stdout.flush()


# ---------------------------------------------------------------------------
# analyze


def _limits(args) -> Limits:
    lim = Limits.from_env()
    return Limits(
        nodes=args.max_nodes if args.max_nodes is not None else lim.nodes,
        ms=args.max_ms if args.max_ms is not None else lim.ms,
    )


def analyze_mad(ag: AssignedGraph, args):
    if ag.n == 0:
        raise UsageError("mad needs at least one vertex")
    value, witness = mad(ag.graph)
    return {"mad": str(value), "witness": witness.vertices}, EXIT_OK


def analyze_potential(ag: AssignedGraph, args):
    if ag.n == 0:
        raise UsageError("potential needs at least one vertex")
    w = min_potential(ag)
    return {"min": w.value, "witness": w.vertices, "all_positive": w.value > 0}, EXIT_OK


def analyze_partition(ag: AssignedGraph, args):
    res = solve_if_partition(ag, limits=_limits(args), use_reductions=not args.no_reductions)
    if res.outcome == "SAT":
        return {"sat": True, **res.partition.to_json(), "stats": res.stats.to_json()}, EXIT_OK
    if res.outcome == "UNSAT":
        return {"sat": False, "stats": res.stats.to_json()}, EXIT_REFUTED
    return {"sat": None, "inconclusive": True, "stats": res.stats.to_json()}, EXIT_CAP


def analyze_starcolor(ag: AssignedGraph, args):
    g = ag.graph
    if args.exact:
        col = star_chromatic_number(g, cap=args.cap)
        return {"k": col.colors_used, "colors": list(col.coloring.colors), "method": "exact"}, EXIT_OK
    res = solve_if_partition(AssignedGraph.unassigned(g), limits=_limits(args))
    if res.sat:
        col = star_coloring_from_partition(g, res.partition)
        return {"k": col.colors_used, "colors": list(col.coloring.colors), "method": "partition"}, EXIT_OK
    if res.outcome == "INCONCLUSIVE":
        return {"k": None, "inconclusive": True}, EXIT_CAP
    col = star_chromatic_number(g, cap=args.cap)
    return {"k": col.colors_used, "colors": list(col.coloring.colors), "method": "exact"}, EXIT_OK


def analyze_gadgetize(ag: AssignedGraph, args):
    exp = expand_to_unassigned(ag)
    return serialize_graph(exp.result.graph, "graph6"), EXIT_OK


def analyze_discharge(ag: AssignedGraph, args):
    verdict = audit_lemma8(ag)
    payload = {
        "trace": verdict.trace.to_json(),
        "configurations": [c.to_json() for c in verdict.configurations],
        "lemma8": verdict.to_json(),
    }
    return payload, EXIT_OK if verdict.ok else EXIT_REFUTED


ANALYZERS = {
    "mad": analyze_mad,
    "potential": analyze_potential,
    "partition": analyze_partition,
    "starcolor": analyze_starcolor,
    "gadgetize": analyze_gadgetize,
    "discharge": analyze_discharge,
}


def cmd_analyze(args) -> tuple[dict | str, int, bytes]:
    if args.subcommand == "sharpness":
        if args.k is None:
            raise UsageError("sharpness needs --k")
        if args.k < 3:
            raise UsageError("--k must be at least 3")
        g = sharpness_graph(args.k).result
        return serialize_graph(g, args.out_format), EXIT_OK, str(args.k).encode()
    ag, digest_input = _load(args)
    payload, code = ANALYZERS[args.subcommand](ag, args)
    return payload, code, digest_input


# ---------------------------------------------------------------------------
# check / generate


def cmd_check(args) -> tuple[dict, int, bytes]:
    report = run_property(args.theorem, args.n, args.samples, args.seed, jobs=args.jobs, artifacts_dir=args.artifacts)
    digest_input = f"{args.theorem}:{args.n}:{args.samples}:{args.seed}".encode()
    return report.to_json(), EXIT_OK if report.passed else EXIT_REFUTED, digest_input


def cmd_generate(args) -> tuple[str, int, bytes]:
    if args.model == "gnm":
        spec = GeneratorSpec("gnm", args.n, args.seed, m=args.m)
    else:
        spec = GeneratorSpec("sparse_near_threshold", args.n, args.seed, target=Fraction(args.target))
    g = generate(spec)
    return serialize_graph(g, args.out_format), EXIT_OK, repr(spec).encode()


# ---------------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="graph file (default: standard input; '-' also means stdin)")
    p.add_argument(
        "--format",
        choices=["auto", "graph6", "edges", "edge_list"],
        default="auto",
        help="input format; 'auto' tells graph6 from edge lists by content",
    )
    p.add_argument("--assign", help="assignment file of 'v L' lines (L in I, F, U)")


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=int, help="search node cap (default from IFPART_CAPS)")
    p.add_argument("--max-ms", type=int, help="search time cap in milliseconds (default from IFPART_CAPS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ifpart", description=__doc__.splitlines()[0])
    parser.add_argument("--report", help="also write a JSON run report (with timing) to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="analyze one graph")
    an_sub = an.add_subparsers(dest="subcommand", required=True)
    for name, helptext in [
        ("mad", "exact maximum average degree"),
        ("potential", "minimum potential over nonempty subgraphs"),
        ("partition", "decide and find an I,F-partition extending the assignment"),
        ("starcolor", "star coloring (4 colors via a partition, or exact with --exact)"),
        ("gadgetize", "replace I/F labels by gadgets; prints graph6"),
        ("discharge", "charge trace, configurations and the discharging audit"),
    ]:
        p = an_sub.add_parser(name, help=helptext)
        _add_input(p)
        _add_caps(p)
        if name == "partition":
            p.add_argument("--no-reductions", action="store_true", help="plain backtracking only")
        if name == "starcolor":
            p.add_argument("--exact", action="store_true", help="compute the star chromatic number")
            p.add_argument("--cap", type=int, default=STAR_CHROMATIC_CAP, help="vertex cap for exact search")
    p = an_sub.add_parser("sharpness", help="cycle with pendant triangles; prints graph6")
    p.add_argument("--k", type=int, help="cycle length (>= 3)")
    p.add_argument("--out-format", choices=["graph6", "edges"], default="graph6")

    ck = sub.add_parser("check", help="run a theorem check over generated instances")
    ck.add_argument("--theorem", required=True, choices=THEOREMS)
    ck.add_argument("--n", type=int, default=10, help="maximum vertex count")
    ck.add_argument("--samples", type=int, default=100, help="instances satisfying the hypothesis")
    ck.add_argument("--seed", type=int, default=0)
    ck.add_argument("--jobs", type=int, default=1)
    ck.add_argument("--artifacts", default="counterexamples", help="directory for counterexample dumps")

    gen = sub.add_parser("generate", help="seeded random graph")
    gen.add_argument("model", choices=["gnm", "near"], help="gnm (n, m) or near (n, target average degree)")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int)
    gen.add_argument("--target", default="5/2")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out-format", choices=["graph6", "edges"], default="graph6")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        if args.command == "analyze":
            payload, code, digest_input = cmd_analyze(args)
        elif args.command == "check":
            payload, code, digest_input = cmd_check(args)
        else:
            if args.model == "gnm" and args.m is None:
                raise UsageError("gnm needs --m")
            payload, code, digest_input = cmd_generate(args)
    except CapExceeded as exc:  # before ValueError, which it subclasses
        print(f"ifpart: inconclusive: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, UsageError, GeneratorError, ValueError) as exc:
        print(f"ifpart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload)
    if args.report:
        report = RunReport(
            " ".join(sys.argv[1:] if argv is None else argv),
            hashlib.sha256(digest_input).hexdigest(),
            payload,
            code,
            time.perf_counter() - started,
        )
        Path(args.report).write_text(json.dumps(report.to_json(), indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
