"""Portable deterministic randomness built on the SplitMix64 mixer.

Everything that draws or hashes in this package goes through the SplitMix64
finalizer with its published constants, so plans and hashes are reproducible
bit-for-bit across platforms and languages.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a 64-bit bijective avalanche mix."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * _MIX_MUL_1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX_MUL_2) & MASK64
    return x ^ (x >> 31)


def fold64(*values: int) -> int:
    """Order-sensitively fold integers into one 64-bit seed."""
    h = 0
    for v in values:
        h = mix64((h + GOLDEN_GAMMA) ^ (v & MASK64))
    return h


class SplitMix64:
    """The SplitMix64 sequence generator: state steps by the golden gamma."""

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via the scaled-multiply bound."""
        if n < 1:
            raise ValueError(f"bound must be positive, got {n}")
        return (self.next_u64() * n) >> 64

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.below(hi - lo + 1)

    def weighted_index(self, weights: Sequence[int]) -> int:
        """Index drawn proportionally to non-negative integer weights."""
        total = sum(weights)
        if total <= 0:
            raise ValueError("weights must sum to a positive value")
        r = self.below(total)
        acc = 0
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
        raise AssertionError("unreachable: cumulative walk exhausted")


def _mix64_array(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX_MUL_1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX_MUL_2)
    x ^= x >> np.uint64(31)
    return x


def hash_blocks(blocks: np.ndarray) -> np.ndarray:
    """Hash each row of a (n, m) uint8 matrix to one 64-bit value.

    Each byte contributes a position-keyed SplitMix64 mix, XOR-folded per
    row; the fold is then re-mixed with the row length.  Changing any single
    byte is guaranteed to change that row's hash (the per-byte mix is a
    bijection of (position, value)).
    """
    if blocks.ndim != 2:
        raise ValueError(f"expected a 2-d byte matrix, got {blocks.ndim} dimensions")
    m = blocks.shape[1]
    pos_keys = (np.arange(m, dtype=np.uint64) + np.uint64(1)) * np.uint64(GOLDEN_GAMMA)
    contrib = _mix64_array(
        pos_keys[None, :] ^ ((blocks.astype(np.uint64) + np.uint64(1)) * np.uint64(_MIX_MUL_1))
    )
    folded = np.bitwise_xor.reduce(contrib, axis=1)
    length_key = np.uint64((m * GOLDEN_GAMMA) & MASK64)
    return _mix64_array(folded ^ length_key)


def to_unit_interval(h: np.ndarray) -> np.ndarray:
    """Map 64-bit hashes to exactly representable float64 values in [0, 1)."""
    return (h >> np.uint64(11)).astype(np.float64) * (2.0**-53)
