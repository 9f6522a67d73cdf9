"""Tests for the seedable generator of g2kit package."""

from fractions import Fraction

import pytest

from g2kit.rng import XorShift64Star, derive_seed, splitmix64


class TestSplitMix:
    def test_reference_value(self):
        assert splitmix64(0) == 0xE220A8397B1DCDAF

    def test_derived_seeds_differ(self):
        seeds = {derive_seed(0, i) for i in range(100)}
        assert len(seeds) == 100

    def test_derive_seed_is_pure(self):
        assert derive_seed(7, 3) == derive_seed(7, 3)
        assert derive_seed(7, 3) != derive_seed(8, 3)


class TestXorShift64Star:
    """Tests for determinism and ranges of the generator."""

    def test_same_seed_same_stream(self):
        a, b = XorShift64Star(42), XorShift64Star(42)
        assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]

    def test_different_seeds_differ(self):
        a, b = XorShift64Star(1), XorShift64Star(2)
        assert [a.next_u64() for _ in range(4)] != [b.next_u64() for _ in range(4)]

    def test_outputs_fit_in_64_bits(self):
        rng = XorShift64Star(0)
        assert all(0 <= rng.next_u64() < 1 << 64 for _ in range(100))

    def test_uniform_range(self):
        rng = XorShift64Star(5)
        values = [rng.uniform(-1.0, 1.0) for _ in range(1000)]
        assert all(-1.0 <= v < 1.0 for v in values)
        assert min(values) < -0.9 and max(values) > 0.9

    def test_randint_is_closed_range(self):
        rng = XorShift64Star(9)
        values = {rng.randint(0, 1) for _ in range(200)}
        assert values == {0, 1}

    def test_randint_empty_range(self):
        with pytest.raises(ValueError, match="empty range"):
            XorShift64Star(0).randint(3, 2)

    def test_rational(self):
        rng = XorShift64Star(11)
        for _ in range(100):
            q = rng.rational(bound=9, max_den=7)
            assert isinstance(q, Fraction)
            assert abs(q) <= 9

    def test_spawn_is_independent_of_call_order(self):
        parent = XorShift64Star(3)
        first = parent.spawn(4).next_u64()
        parent_again = XorShift64Star(3)
        parent_again.spawn(0)
        assert parent_again.spawn(4).next_u64() == first

    def test_negative_seed(self):
        with pytest.raises(ValueError, match="non-negative"):
            XorShift64Star(-1)
