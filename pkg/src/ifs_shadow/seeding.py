"""Counter-based pseudo-random derivation.

Symbol streams need random access: element n must be reproducible without
generating elements 0..n-1 first, and the scalar and vectorized code paths
must agree bit for bit.  A splitmix64 step keyed by (seed, index) gives both.
"""
from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """Finalizer of the splitmix64 generator, on one 64-bit word."""
    z = value & _MASK
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def indexed_word(seed: int, index: int) -> int:
    """64-bit word number `index` of the stream keyed by `seed`."""
    return splitmix64((seed & _MASK) + (index + 1) * _GAMMA)


def indexed_words(seed: int, indices: np.ndarray) -> np.ndarray:
    """Vectorized `indexed_word` over an integer array (uint64 output)."""
    old = np.seterr(over="ignore")
    try:
        idx = indices.astype(np.uint64)
        z = np.uint64(seed & _MASK) + (idx + np.uint64(1)) * np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))
    finally:
        np.seterr(**old)


def mix_seed(*parts: int) -> int:
    """Fold several integers into one derived seed."""
    acc = 0x243F6A8885A308D3
    for part in parts:
        acc = splitmix64(acc ^ (part & _MASK))
    return acc
