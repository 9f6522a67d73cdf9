"""
Seedable pseudo-random generator shared by every randomized suite.

xorshift64* with a splitmix64 seed expansion, so reports are reproducible
bit for bit across implementations:

    state   = splitmix64(seed)            (never zero)
    x ^= x >> 12; x ^= x << 25; x ^= x >> 27   (mod 2^64)
    output  = x * 0x2545F4914F6CDD1D          (mod 2^64)

Doubles in [0, 1) use the top 53 bits of the output.
"""

from fractions import Fraction

from g2kit.constants import (
    MASK64,
    SPLITMIX_GAMMA,
    SPLITMIX_MIX1,
    SPLITMIX_MIX2,
    XORSHIFT_MULTIPLIER,
    XORSHIFT_SHIFTS,
)

__all__ = ["XorShift64Star", "splitmix64", "derive_seed"]


def splitmix64(seed: int) -> int:
    z = (seed + SPLITMIX_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * SPLITMIX_MIX1) & MASK64
    z = ((z ^ (z >> 27)) * SPLITMIX_MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th item of a batch run with ``seed``."""
    return splitmix64((seed ^ splitmix64(index)) & MASK64)


class XorShift64Star:
    """The named generator behind ``--seed``."""

    def __init__(self, seed: int = 0):
        if seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {seed}")
        self.state = splitmix64(seed & MASK64) or SPLITMIX_GAMMA

    def next_u64(self) -> int:
        a, b, c = XORSHIFT_SHIFTS
        x = self.state
        x ^= x >> a
        x ^= (x << b) & MASK64
        x ^= x >> c
        self.state = x
        return (x * XORSHIFT_MULTIPLIER) & MASK64

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        u = (self.next_u64() >> 11) * (1.0 / (1 << 53))
        return low + (high - low) * u

    def randint(self, low: int, high: int) -> int:
        """Integer in the closed range [low, high]."""
        span = high - low + 1
        if span <= 0:
            raise ValueError(f"empty range [{low}, {high}]")
        return low + self.next_u64() % span

    def rational(self, bound: int = 9, max_den: int = 7) -> Fraction:
        return Fraction(self.randint(-bound, bound), self.randint(1, max_den))

    def spawn(self, index: int) -> "XorShift64Star":
        """Independent stream for sub-task ``index``, independent of call order."""
        child = XorShift64Star.__new__(XorShift64Star)
        child.state = derive_seed(self.state, index) or 1
        return child
