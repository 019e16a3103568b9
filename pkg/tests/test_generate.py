from fractions import Fraction

import pytest

from ifpart.generate import (
    GeneratorError,
    GeneratorSpec,
    XorShift64Star,
    generate,
    gnm,
    sample_seed,
    sparse_near_threshold,
    splitmix64,
)


def test_splitmix_reference_values():
    # first outputs of the reference splitmix64 stream seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4


def test_prng_is_deterministic():
    a, b = XorShift64Star(42), XorShift64Star(42)
    assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]
    assert XorShift64Star(1).next_u64() != XorShift64Star(2).next_u64()
    assert sample_seed(3, 0) != sample_seed(3, 1)


def test_bounded_draws_in_range_and_cover():
    rng = XorShift64Star(3)
    seen = {rng.below(7) for _ in range(500)}
    assert seen == set(range(7))
    assert all(-2 <= rng.between(-2, 2) <= 2 for _ in range(200))
    with pytest.raises(ValueError):
        rng.below(0)


def test_gnm_exact_edge_count_and_determinism():
    g = gnm(12, 20, 5)
    assert (g.n, g.m) == (12, 20)
    assert gnm(12, 20, 5) == g
    assert gnm(12, 20, 6) != g
    assert gnm(4, 6, 1).m == 6


def test_gnm_too_many_edges():
    with pytest.raises(GeneratorError):
        gnm(4, 7, 0)


def test_near_threshold_edge_range():
    for seed in range(50):
        g = sparse_near_threshold(20, Fraction(5, 2), seed)
        assert 23 <= g.m <= 27
    assert generate(GeneratorSpec("sparse_near_threshold", 20, 3, target=Fraction(5, 2))) == sparse_near_threshold(
        20, Fraction(5, 2), 3
    )


def test_generate_spec_errors():
    with pytest.raises(GeneratorError):
        generate(GeneratorSpec("gnm", 5, 0))
    with pytest.raises(GeneratorError):
        generate(GeneratorSpec("ba", 5, 0))
