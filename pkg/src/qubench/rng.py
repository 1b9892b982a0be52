"""Seed handling built on the counter-based Philox-4x64 generator.

Philox keys are 128 bits; we fill them with (seed, stream) so that any
labeled substream is reproducible from the seed alone, independent of
execution order. stable_seed() hashes string labels to a 64-bit seed so
derived seeds survive config reordering.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for the (seed, stream) Philox key."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def stable_seed(*parts) -> int:
    """64-bit seed derived from the SHA-256 of the joined label parts."""
    label = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")
