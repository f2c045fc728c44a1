"""Deterministic, seedable random number source for measurement sampling.

SplitMix64: a 64-bit counter-based generator with a fixed odd increment and
a finalizing hash. Output depends only on (seed, call index), so identical
seeds reproduce identical sequences on every platform, and independent
streams can be split off cheaply.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class RngState:
    """Splittable deterministic generator owned by one execution at a time."""

    __slots__ = ("seed", "_counter")

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self._counter = self.seed

    def next_u64(self) -> int:
        self._counter = (self._counter + _GOLDEN) & _MASK
        return _mix(self._counter)

    def uniform(self) -> float:
        # 53 random bits mapped onto [0, 1)
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def split(self) -> "RngState":
        """Derive an independent stream without disturbing reproducibility."""
        return RngState(self.next_u64())

    def __repr__(self) -> str:
        return f"RngState(seed={self.seed})"
