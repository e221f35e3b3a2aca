"""Seeded splitmix64 generator used for every randomised check.

The state is a plain 64-bit integer, so a run is reproducible from its seed on
any platform.
"""

from fractions import Fraction

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (rejection sampling, no modulo bias)."""
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            r = self.next_u64()
            if r < limit:
                return lo + r % span

    def coefficient(self, bound: int, nonzero: bool = False) -> Fraction:
        while True:
            c = self.randint(-bound, bound)
            if c or not nonzero:
                return Fraction(c)


def derive_seed(seed: int, *salt: int) -> int:
    """Independent stream for (seed, trial, ...) without sharing state."""
    g = SplitMix64(seed)
    for s in salt:
        g.state ^= (s * 0xD1B54A32D192ED03) & MASK64
        g.next_u64()
    return g.next_u64()
