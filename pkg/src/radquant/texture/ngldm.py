"""Neighbouring grey level dependence matrix and its 16 features."""
from __future__ import annotations

import numpy as np

from .. import registry as reg
from ..preprocess import DiscreteVolume
from ..registry import FeatureSet
from .common import level_grid, rlm_style_features
from .directions import neighbor_offsets_26

_IDS = reg.class_features(reg.CLS_NGLDM)


def build_ngldm(dvol: DiscreteVolume, alpha: int = 0) -> np.ndarray:
    """Count matrix over (dense level axis) x (dependence count 0..max
    observed); the dependence count of a voxel is its number of in-ROI
    26-neighbors whose level differs by at most `alpha`."""
    g = level_grid(dvol)
    nz, ny, nx = g.levels.shape
    padded_lev = np.pad(g.levels, 1)
    padded_roi = np.pad(g.roi, 1)
    dep = np.zeros((nz, ny, nx), dtype=np.int64)
    for dz, dy, dx in neighbor_offsets_26():
        sl = (slice(1 + dz, 1 + dz + nz), slice(1 + dy, 1 + dy + ny),
              slice(1 + dx, 1 + dx + nx))
        inside = padded_roi[sl]
        close = np.abs(padded_lev[sl] - g.levels) <= alpha
        dep += inside & close
    counts = dep[g.roi]
    levels = (g.levels - g.base)[g.roi]
    m = np.zeros((len(g.axis), int(counts.max()) + 1), dtype=np.int64)
    np.add.at(m, (levels, counts), 1)
    return m


def ngldm_features(matrix: np.ndarray, dvol: DiscreteVolume) -> FeatureSet:
    """Column j of the matrix holds dependence count j; the feature formulas
    use the column index j+1, mirroring the run-length convention where the
    first column carries weight 1."""
    g = level_grid(dvol)
    n_v = int(g.roi.sum())
    return rlm_style_features(
        matrix, g.axis, np.arange(1, matrix.shape[1] + 1),
        percentage_denominator=float(n_v), ids=_IDS)
