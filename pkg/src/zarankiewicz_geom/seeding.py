"""Deterministic seed derivation shared by every randomized routine."""

from __future__ import annotations

import random

MASK64 = (1 << 64) - 1


def mix64(seed: int, index: int) -> int:
    """Derive the seed for trial/retry ``index`` from a master seed.

    This is the splitmix64 finalizer applied to ``seed + (index + 1) * golden``,
    so derived seeds are independent of scheduling order.
    """
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def rng_for(seed: int, index: int | None = None) -> random.Random:
    if index is None:
        return random.Random(seed & MASK64)
    return random.Random(mix64(seed, index))
