"""Seedable xoshiro256** generator with splittable per-stream seeding.

Stream s of master seed m starts from the SplitMix64 chain keyed by
``mix64(mix64(m) ^ ((s+1) * golden))``; four chain outputs fill the 256-bit
xoshiro state. Distinct streams therefore never share state prefixes, and a
(seed, stream) pair identifies a reproducible sequence on every platform.
The derivation is part of the output contract: changing it changes every
report produced from a seed.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as _k


class Xoshiro256StarStar:
    """Single stream of xoshiro256** uniforms.

    Parameters
    ----------
    seed : int
        64-bit master seed (wrapped mod 2**64).
    stream : int
        Stream index; replicas use consecutive indices.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.stream = int(stream) & 0xFFFFFFFFFFFFFFFF
        self._state = _k.stream_state(np.uint64(self.seed), np.uint64(self.stream))

    def next_u64(self) -> int:
        return int(_k.next_u64(self._state))

    def uniform(self) -> float:
        """Next double in [0, 1) with 53 random bits."""
        return float(_k.next_uniform(self._state))

    def uniforms(self, n: int) -> np.ndarray:
        out = np.empty(n, dtype=np.float64)
        _k.fill_uniforms(self._state, out)
        return out

    @property
    def state(self) -> np.ndarray:
        """Current 4-word state (a copy)."""
        return self._state.copy()

    def __repr__(self) -> str:
        return f"Xoshiro256StarStar(seed={self.seed}, stream={self.stream})"
