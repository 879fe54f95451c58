"""Seeded sampling primitives.

All randomized routines in the package draw from a SplitMix64 stream, so
equal seeds give identical results on any platform regardless of thread
settings. Vertex samples are returned sorted to keep downstream matrix
indexing canonical.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class Rng:
    """SplitMix64 generator over 64-bit outputs."""

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK
        self._state = self.seed

    def next64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def unit(self) -> float:
        # 53-bit mantissa, uniform in [0, 1)
        return (self.next64() >> 11) / float(1 << 53)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), unbiased via rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (_MASK + 1) - ((_MASK + 1) % bound)
        while True:
            x = self.next64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def derive(self, salt: int) -> "Rng":
        """Independent child stream, deterministic in (seed, salt).

        Does not consume state from the parent, so retries and per-probe
        streams can be replayed in isolation.
        """
        return Rng(_mix((self.seed + (int(salt) + 1) * _GAMMA) & _MASK))


def sample(pool, count: float, rng: Rng) -> np.ndarray:
    """Pick min(ceil(count), |pool|) distinct elements of pool, uniformly.

    Returns a sorted int64 array. When the cap binds the whole pool is
    returned, which makes small instances deterministic.
    """
    pool = np.asarray(pool, dtype=np.int64)
    if count < 0:
        raise ValueError("count must be nonnegative")
    k = min(math.ceil(count), pool.size)
    if k >= pool.size:
        return np.sort(pool)
    picked = pool.copy()
    for i in range(k):
        j = i + rng.below(picked.size - i)
        picked[i], picked[j] = picked[j], picked[i]
    return np.sort(picked[:k])
