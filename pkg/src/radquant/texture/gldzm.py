"""Grey level distance zone matrix and its 16 features."""
from __future__ import annotations

import numpy as np
from scipy import ndimage

from .. import registry as reg
from ..preprocess import DiscreteVolume
from ..registry import FeatureSet
from .common import level_grid, rlm_style_features
from .glszm import _STRUCT26

_IDS = reg.class_features(reg.CLS_GLDZM)


def distance_map(roi: np.ndarray) -> np.ndarray:
    """City-block steps from each ROI voxel to the nearest voxel outside the
    ROI; the grid border counts as outside, so border voxels are at 1."""
    padded = np.pad(roi, 1)
    d = ndimage.distance_transform_cdt(padded, metric="taxicab")
    return d[1:-1, 1:-1, 1:-1]


def build_gldzm(dvol: DiscreteVolume) -> np.ndarray:
    """Count matrix over (dense level axis) x (zone distance 1..max observed);
    a zone's distance is the minimum distance-map value over its voxels."""
    g = level_grid(dvol)
    dist = distance_map(g.roi)
    entries = []
    for level in g.axis:
        sel = g.roi & (g.levels == level)
        if not sel.any():
            continue
        labels, n = ndimage.label(sel, structure=_STRUCT26)
        for zone_id in range(1, n + 1):
            entries.append((int(level), int(dist[labels == zone_id].min())))
    max_dist = max(d for _, d in entries)
    m = np.zeros((len(g.axis), max_dist), dtype=np.int64)
    for level, d in entries:
        m[level - g.base, d - 1] += 1
    return m


def gldzm_features(matrix: np.ndarray, dvol: DiscreteVolume) -> FeatureSet:
    g = level_grid(dvol)
    n_v = int(g.roi.sum())
    return rlm_style_features(
        matrix, g.axis, np.arange(1, matrix.shape[1] + 1),
        percentage_denominator=float(n_v), ids=_IDS)
