"""I,F-partitions of sparse graphs: potentials, exact Mad, a partition solver,
forcing gadgets, a discharging audit and star colorings."""

from .coloring import star_chromatic_number, star_coloring_from_partition, verify_star_coloring
from .discharging import audit_lemma8, detect_configurations, find_threads, run_discharging
from .gadgets import expand_to_unassigned, sharpness_graph
from .graph import AssignedGraph, Graph, Label, Partition, parse_graph, to_graph6, verify_if_partition
from .potential import mad, min_potential, potential
from .solver import solve_if_partition

__all__ = [
    "AssignedGraph", "Graph", "Label", "Partition",
    "audit_lemma8", "detect_configurations", "expand_to_unassigned", "find_threads", "mad",
    "min_potential", "parse_graph", "potential", "run_discharging", "sharpness_graph",
    "solve_if_partition", "star_chromatic_number", "star_coloring_from_partition",
    "to_graph6", "verify_if_partition", "verify_star_coloring",
]  # fmt: skip
__version__ = "0.1.0"
