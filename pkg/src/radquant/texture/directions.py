"""Direction vectors for 3D texture matrices.

The 26-neighborhood decomposes into 13 direction vectors and their
negations; builders scan the 13 and symmetrize afterwards, which yields
identical counts at half the work.
"""
from __future__ import annotations

import numpy as np


def direction_set(delta: int = 1) -> list[tuple[int, int, int]]:
    """13 unique (dx, dy, dz) offsets with Chebyshev norm `delta`.

    A vector is kept when its first nonzero component in (dz, dy, dx) order
    is positive, so no vector is the negation of another.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    out = []
    for dz in (-1, 0, 1):
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                if (dz, dy, dx) == (0, 0, 0):
                    continue
                if (dz, dy, dx) > (0, 0, 0):  # lexicographic half-space
                    out.append((dx * delta, dy * delta, dz * delta))
    assert len(out) == 13
    return out


def neighbor_offsets_26() -> np.ndarray:
    """All 26 (dz, dy, dx) unit offsets."""
    offs = [(dz, dy, dx)
            for dz in (-1, 0, 1) for dy in (-1, 0, 1) for dx in (-1, 0, 1)
            if (dz, dy, dx) != (0, 0, 0)]
    return np.array(offs, dtype=np.int64)
