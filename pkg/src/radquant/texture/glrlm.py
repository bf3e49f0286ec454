"""Grey level run length matrices and their 16 features."""
from __future__ import annotations

import numpy as np

from .. import registry as reg
from ..preprocess import DiscreteVolume
from ..registry import FeatureSet
from .common import level_grid, rlm_style_features, average_feature_sets
from .directions import direction_set

_IDS = reg.class_features(reg.CLS_GLRLM)


def build_glrlm(dvol: DiscreteVolume, delta: int = 1,
                directions=None) -> list[np.ndarray]:
    """One run-length count matrix per direction (rows: dense level axis,
    columns: run length 1..max observed for that direction).

    A run is a maximal sequence of in-ROI voxels of equal level along the
    direction; each run is counted once regardless of orientation.
    """
    g = level_grid(dvol)
    dirs = directions if directions is not None else direction_set(delta)
    nz, ny, nx = g.levels.shape
    out = []
    roi = g.roi
    lev = g.levels
    for (dx, dy, dz) in dirs:
        runs: dict[tuple[int, int], int] = {}
        max_len = 1
        for z0 in range(nz):
            for y0 in range(ny):
                for x0 in range(nx):
                    if not roi[z0, y0, x0]:
                        continue
                    pz, py, px = z0 - dz, y0 - dy, x0 - dx
                    # run starts where the backward neighbor does not continue it
                    if (0 <= pz < nz and 0 <= py < ny and 0 <= px < nx
                            and roi[pz, py, px]
                            and lev[pz, py, px] == lev[z0, y0, x0]):
                        continue
                    length = 1
                    cz, cy, cx = z0 + dz, y0 + dy, x0 + dx
                    while (0 <= cz < nz and 0 <= cy < ny and 0 <= cx < nx
                           and roi[cz, cy, cx]
                           and lev[cz, cy, cx] == lev[z0, y0, x0]):
                        length += 1
                        cz, cy, cx = cz + dz, cy + dy, cx + dx
                    key = (int(lev[z0, y0, x0]), length)
                    runs[key] = runs.get(key, 0) + 1
                    max_len = max(max_len, length)
        m = np.zeros((len(g.axis), max_len), dtype=np.int64)
        for (level, length), count in runs.items():
            m[level - g.base, length - 1] = count
        out.append(m)
    return out


def merge_matrices(matrices: list[np.ndarray]) -> np.ndarray:
    """Sum count matrices, padding columns to the widest."""
    cols = max(m.shape[1] for m in matrices)
    merged = np.zeros((matrices[0].shape[0], cols), dtype=np.int64)
    for m in matrices:
        merged[:, :m.shape[1]] += m
    return merged


def glrlm_features(matrices: list[np.ndarray], dvol: DiscreteVolume,
                   mode: str = "merge") -> FeatureSet:
    """Run percentage divides by ROI voxels x directions when merging and by
    ROI voxels per direction when averaging."""
    g = level_grid(dvol)
    n_v = int(g.roi.sum())
    if mode == "merge":
        m = merge_matrices(matrices)
        fs = rlm_style_features(
            m, g.axis, np.arange(1, m.shape[1] + 1),
            percentage_denominator=float(n_v * len(matrices)), ids=_IDS)
    elif mode == "average":
        sets = [rlm_style_features(m, g.axis, np.arange(1, m.shape[1] + 1),
                                   percentage_denominator=float(n_v), ids=_IDS)
                for m in matrices]
        fs = average_feature_sets(sets, _IDS)
    else:
        raise ValueError(f"unknown aggregation mode {mode!r}")
    fs.provenance["aggregation"] = mode
    return fs
