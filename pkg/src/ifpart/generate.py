"""Seeded, platform-independent instance generators.

PRNG: xorshift64* (Vigna), 64-bit state ``x``, one step::

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27   (all mod 2**64)
    output = x * 0x2545F4914F6CDD1D mod 2**64

The state is seeded with ``splitmix64(seed)`` (replaced by 1 if that is zero).
Sample ``i`` of a harness run with master seed ``s`` uses seed
``splitmix64(s ^ splitmix64(i))``, so serial and parallel runs see the same corpus.
Bounded integers use rejection sampling, so they are exactly uniform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import AssignedGraph, Graph, Label

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def sample_seed(master: int, index: int) -> int:
    return splitmix64((master & MASK64) ^ splitmix64(index))


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        if k <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def choice(self, items: Sequence):
        return items[self.below(len(items))]


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    """``model`` is ``"gnm"`` (uses ``m``) or ``"sparse_near_threshold"`` (uses ``target``)."""

    model: str
    n: int
    seed: int
    m: int | None = None
    target: Fraction | None = None


def _sample_pairs(n: int, m: int, rng: XorShift64Star) -> list[tuple[int, int]]:
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    if m > len(pairs):
        raise GeneratorError(f"{m} edges do not fit in a simple graph on {n} vertices")
    # partial Fisher-Yates
    for i in range(m):
        j = i + rng.below(len(pairs) - i)
        pairs[i], pairs[j] = pairs[j], pairs[i]
    return pairs[:m]


def gnm(n: int, m: int, seed: int) -> Graph:
    if n < 0 or m < 0:
        raise GeneratorError("n and m must be non-negative")
    rng = XorShift64Star(seed)
    return Graph.from_edges(n, _sample_pairs(n, m, rng))


def sparse_near_threshold(n: int, target: Fraction, seed: int) -> Graph:
    """Random graph with ``floor(target*n/2)`` edges, shifted by a random amount in ``-2..2``."""
    target = Fraction(target)
    rng = XorShift64Star(seed)
    base = math.floor(target * n / 2)
    m = base + rng.between(-2, 2)
    m = max(m, 0)
    return Graph.from_edges(n, _sample_pairs(n, m, rng))


def generate(spec: GeneratorSpec) -> Graph:
    if spec.model == "gnm":
        if spec.m is None:
            raise GeneratorError("gnm needs m")
        return gnm(spec.n, spec.m, spec.seed)
    if spec.model == "sparse_near_threshold":
        if spec.target is None:
            raise GeneratorError("sparse_near_threshold needs a target density")
        return sparse_near_threshold(spec.n, spec.target, spec.seed)
    raise GeneratorError(f"unknown model {spec.model!r}")


def random_labels(n: int, rng: XorShift64Star, weights: tuple[int, int, int] = (1, 1, 4)) -> tuple[Label, ...]:
    """Independent labels drawn with integer weights for (I, F, U)."""
    total = sum(weights)
    out = []
    for _ in range(n):
        r = rng.below(total)
        if r < weights[0]:
            out.append(Label.I)
        elif r < weights[0] + weights[1]:
            out.append(Label.F)
        else:
            out.append(Label.U)
    return tuple(out)


def random_graph(rng: XorShift64Star, n_max: int, n_min: int = 1, max_avg_degree: Fraction = Fraction(3)) -> Graph:
    """Graph on a random number of vertices with a random edge count up to ``max_avg_degree * n / 2``."""
    n = rng.between(n_min, n_max)
    cap = min(n * (n - 1) // 2, math.floor(max_avg_degree * n / 2))
    m = rng.between(0, cap)
    return Graph.from_edges(n, _sample_pairs(n, m, rng))


def random_assigned_graph(
    rng: XorShift64Star,
    n_max: int,
    n_min: int = 1,
    weights: tuple[int, int, int] = (1, 1, 4),
    max_avg_degree: Fraction = Fraction(3),
) -> AssignedGraph:
    g = random_graph(rng, n_max, n_min, max_avg_degree)
    return AssignedGraph(g, random_labels(g.n, rng, weights))
