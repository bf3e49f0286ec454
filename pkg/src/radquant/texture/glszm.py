"""Grey level size zone matrix and its 16 features."""
from __future__ import annotations

import numpy as np
from scipy import ndimage

from .. import registry as reg
from ..preprocess import DiscreteVolume
from ..registry import FeatureSet
from .common import level_grid, rlm_style_features

_IDS = reg.class_features(reg.CLS_GLSZM)

_STRUCT26 = np.ones((3, 3, 3), dtype=bool)


def zones(dvol: DiscreteVolume) -> list[tuple[int, int]]:
    """(level, size) of every maximal 26-connected equal-level ROI zone."""
    g = level_grid(dvol)
    out = []
    for level in g.axis:
        sel = g.roi & (g.levels == level)
        if not sel.any():
            continue
        labels, n = ndimage.label(sel, structure=_STRUCT26)
        sizes = np.bincount(labels.reshape(-1))[1:]
        out.extend((int(level), int(s)) for s in sizes)
    return out


def build_glszm(dvol: DiscreteVolume) -> np.ndarray:
    """Count matrix over (dense level axis) x (zone size 1..max observed)."""
    g = level_grid(dvol)
    zs = zones(dvol)
    max_size = max(s for _, s in zs)
    m = np.zeros((len(g.axis), max_size), dtype=np.int64)
    for level, size in zs:
        m[level - g.base, size - 1] += 1
    return m


def glszm_features(matrix: np.ndarray, dvol: DiscreteVolume) -> FeatureSet:
    g = level_grid(dvol)
    n_v = int(g.roi.sum())
    return rlm_style_features(
        matrix, g.axis, np.arange(1, matrix.shape[1] + 1),
        percentage_denominator=float(n_v), ids=_IDS)
