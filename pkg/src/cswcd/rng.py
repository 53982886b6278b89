"""Seeded 64-bit generator for reproducible parameter sweeps.

Splitmix-style: the state advances by a fixed odd constant and the output
is mixed by two xorshift-multiply rounds plus a final xorshift. Constants:

    state increment  0x9E3779B97F4A7C15
    first multiply   0xBF58476D1CE4E5B9  (after state ^ state >> 30)
    second multiply  0x94D049BB133111EB  (after z ^ z >> 27)
    final shift      z ^ z >> 31

Pure integer arithmetic, so identical seeds give identical draw streams on
every platform.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_INCREMENT = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic stream of 64-bit words and derived uniform draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _INCREMENT) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MULT1) & _MASK
        z = ((z ^ (z >> 27)) * _MULT2) & _MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        """Uniform double in [lo, hi) from the top 53 bits."""
        u = (self.next_u64() >> 11) * 2.0**-53
        return lo + u * (hi - lo)

    def unimodular(self) -> complex:
        """Uniform point on the unit circle."""
        t = self.uniform(0.0, 2.0 * math.pi)
        return complex(math.cos(t), math.sin(t))

    def complex_annulus(self, r_min: float, r_max: float) -> complex:
        """Radius uniform in [r_min, r_max), angle uniform."""
        return self.uniform(r_min, r_max) * self.unimodular()

    def real_signed(self, lo: float, hi: float) -> float:
        """Uniform magnitude in [lo, hi) with a random sign."""
        mag = self.uniform(lo, hi)
        return mag if self.next_u64() & 1 else -mag

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]
