"""Neighbourhood grey tone difference matrix and its 5 features."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import registry as reg
from ..preprocess import DiscreteVolume
from ..registry import FeatureSet
from .common import level_grid
from .directions import neighbor_offsets_26

_IDS = reg.class_features(reg.CLS_NGTDM)

COARSENESS_CAP = 1e6


@dataclass(frozen=True)
class NGTDM:
    levels: np.ndarray  # dense level axis
    n_i: np.ndarray     # voxels per level that have >= 1 in-ROI neighbor
    s_i: np.ndarray     # summed |level - neighborhood mean| per level


def build_ngtdm(dvol: DiscreteVolume) -> NGTDM:
    """Neighborhood means over the in-ROI 26-neighbors of each ROI voxel;
    voxels with no in-ROI neighbor are excluded entirely."""
    g = level_grid(dvol)
    nz, ny, nx = g.levels.shape
    padded_lev = np.pad(g.levels.astype(np.float64), 1)
    padded_roi = np.pad(g.roi, 1)
    nb_sum = np.zeros((nz, ny, nx), dtype=np.float64)
    nb_cnt = np.zeros((nz, ny, nx), dtype=np.int64)
    for dz, dy, dx in neighbor_offsets_26():
        sl = (slice(1 + dz, 1 + dz + nz), slice(1 + dy, 1 + dy + ny),
              slice(1 + dx, 1 + dx + nx))
        inside = padded_roi[sl]
        nb_sum += np.where(inside, padded_lev[sl], 0.0)
        nb_cnt += inside
    valid = g.roi & (nb_cnt > 0)
    n_i = np.zeros(len(g.axis), dtype=np.int64)
    s_i = np.zeros(len(g.axis), dtype=np.float64)
    idx = (g.levels - g.base)[valid]
    dev = np.abs(g.levels[valid] - nb_sum[valid] / nb_cnt[valid])
    np.add.at(n_i, idx, 1)
    np.add.at(s_i, idx, dev)
    return NGTDM(levels=g.axis.copy(), n_i=n_i, s_i=s_i)


def ngtdm_features(m: NGTDM) -> FeatureSet:
    fs = FeatureSet()
    n_vc = int(m.n_i.sum())
    if n_vc == 0:
        for fid in _IDS:
            fs.add_undefined(fid)
        return fs
    p = m.n_i / n_vc
    v = m.levels.astype(np.float64)
    s = m.s_i
    present = p > 0
    n_gp = int(present.sum())
    pv, vv, sv = p[present], v[present], s[present]

    def put(name, value, flag=""):
        fs.add(f"ngtdm.{name}", value, flag)

    denom = float((p * s).sum())
    if denom > 0:
        put("coarseness", 1.0 / denom)
    else:
        put("coarseness", COARSENESS_CAP, "degenerate")

    if n_gp > 1:
        pair = np.subtract.outer(vv, vv) ** 2
        contrast = (np.outer(pv, pv) * pair).sum() / (n_gp * (n_gp - 1))
        contrast *= s.sum() / n_vc
        put("contrast", float(contrast))
        busy_den = np.abs(np.subtract.outer(vv * pv, vv * pv)).sum()
        if busy_den > 0:
            put("busyness", float((pv * sv).sum() / busy_den))
        else:
            put("busyness", 0.0, "degenerate")
    else:
        put("contrast", 0.0, "degenerate")
        put("busyness", 0.0, "degenerate")

    # complexity and strength over pairs of present levels
    pi = pv[:, None]
    pj = pv[None, :]
    si = sv[:, None]
    sj = sv[None, :]
    dv = np.abs(np.subtract.outer(vv, vv))
    put("complexity", float((dv * (pi * si + pj * sj) / (pi + pj)).sum() / n_vc))
    s_sum = float(s.sum())
    if s_sum > 0:
        put("strength", float(((pi + pj) * dv ** 2).sum() / s_sum))
    else:
        put("strength", 0.0, "degenerate")
    return fs
