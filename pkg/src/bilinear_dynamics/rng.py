"""Deterministic 64-bit pseudo-random generator.

Every piece of randomness in the package (random game matrices, initial
conditions, test fixtures) goes through SplitMix64 so that runs are
reproducible bit-for-bit from a single 64-bit seed, in any language.  The
recurrence, with all arithmetic modulo 2**64:

    state  = state + 0x9E3779B97F4A7C15
    z      = state
    z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z      = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Floats in [0, 1) take the top 53 bits of the output: (output >> 11) * 2**-53.
Matrices are filled row-major from consecutive draws.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Seeded stream of 64-bit integers and derived uniform floats."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_uint64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()

    def uniform_vector(self, size: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
        return np.array([self.uniform(lo, hi) for _ in range(size)])

    def uniform_matrix(self, rows: int, cols: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
        return self.uniform_vector(rows * cols, lo, hi).reshape(rows, cols)
