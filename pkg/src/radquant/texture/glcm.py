"""Grey level co-occurrence matrices and their 25 features."""
from __future__ import annotations

import numpy as np

from .. import registry as reg
from ..preprocess import DiscreteVolume
from ..registry import FeatureSet
from .common import entropy_bits, level_grid, average_feature_sets
from .directions import direction_set

_IDS = reg.class_features(reg.CLS_GLCM)


def _pair_slices(shape, off):
    """Index slices of (voxel, voxel+offset) pairs fully inside the grid."""
    src, dst = [], []
    for n, d in zip(shape, off):
        if d >= 0:
            src.append(slice(0, n - d))
            dst.append(slice(d, n))
        else:
            src.append(slice(-d, n))
            dst.append(slice(0, n + d))
    return tuple(src), tuple(dst)


def build_glcm(dvol: DiscreteVolume, delta: int = 1,
               directions=None) -> list[np.ndarray]:
    """One symmetric count matrix per direction vector.

    Counts ordered in-ROI pairs (k, k+d) and adds the transpose; neighbors
    outside the grid or the ROI contribute nothing.
    """
    g = level_grid(dvol)
    dirs = directions if directions is not None else direction_set(delta)
    n_lev = len(g.axis)
    out = []
    idx = g.levels - g.base
    for (dx, dy, dz) in dirs:
        off = (dz, dy, dx)  # grid is (z, y, x)
        src, dst = _pair_slices(g.levels.shape, off)
        ok = g.roi[src] & g.roi[dst]
        a = idx[src][ok]
        b = idx[dst][ok]
        m = np.zeros((n_lev, n_lev), dtype=np.int64)
        np.add.at(m, (a, b), 1)
        out.append(m + m.T)
    return out


def _glcm_features_single(m: np.ndarray, levels: np.ndarray) -> FeatureSet:
    fs = FeatureSet()
    total = m.sum()
    if total <= 0:
        for fid in _IDS:
            fs.add_undefined(fid)
        return fs
    p = m.astype(np.float64) / total
    v = levels.astype(np.float64)
    n_lev = len(v)
    i = v[:, None]
    j = v[None, :]

    def put(name, value):
        fs.add(f"glcm.{name}", float(value))

    put("joint_maximum", p.max())
    mu = (i * p).sum()
    put("joint_average", mu)
    put("joint_variance", ((i - mu) ** 2 * p).sum())
    put("joint_entropy", entropy_bits(p.reshape(-1)))

    # difference distribution over k = |i - j| (levels are unit-spaced)
    k = np.arange(n_lev, dtype=np.float64)
    p_d = np.zeros(n_lev)
    np.add.at(p_d, np.abs(np.subtract.outer(np.arange(n_lev), np.arange(n_lev))), p)
    da = (k * p_d).sum()
    put("difference_average", da)
    put("difference_variance", ((k - da) ** 2 * p_d).sum())
    put("difference_entropy", entropy_bits(p_d))

    # sum distribution over actual level sums
    m_vals = np.arange(2 * int(v[0]), 2 * int(v[-1]) + 1, dtype=np.float64)
    p_s = np.zeros(len(m_vals))
    np.add.at(p_s, np.add.outer(np.arange(n_lev), np.arange(n_lev)), p)
    sa = (m_vals * p_s).sum()
    put("sum_average", sa)
    put("sum_variance", ((m_vals - sa) ** 2 * p_s).sum())
    put("sum_entropy", entropy_bits(p_s))

    put("angular_second_moment", (p ** 2).sum())
    put("contrast", ((i - j) ** 2 * p).sum())
    put("dissimilarity", (np.abs(i - j) * p).sum())
    put("inverse_difference", (p_d / (1 + k)).sum())
    put("inverse_difference_normalised", (p_d / (1 + k / n_lev)).sum())
    put("inverse_difference_moment", (p_d / (1 + k ** 2)).sum())
    put("inverse_difference_moment_normalised", (p_d / (1 + (k / n_lev) ** 2)).sum())
    put("inverse_variance", (p_d[1:] / k[1:] ** 2).sum())

    px = p.sum(axis=1)
    mu_x = (v * px).sum()
    var_x = ((v - mu_x) ** 2 * px).sum()
    if var_x > 0:
        corr = (((i - mu_x) * (j - mu_x) * p).sum()) / var_x
        put("correlation", corr)
    else:
        fs.add_undefined("glcm.correlation")
    put("autocorrelation", (i * j * p).sum())
    put("cluster_tendency", ((i + j - 2 * mu_x) ** 2 * p).sum())
    put("cluster_shade", ((i + j - 2 * mu_x) ** 3 * p).sum())
    put("cluster_prominence", ((i + j - 2 * mu_x) ** 4 * p).sum())

    hx = entropy_bits(px)
    hxy = entropy_bits(p.reshape(-1))
    outer = np.outer(px, px)
    mask_p = p > 0
    hxy1 = float(-(p[mask_p] * np.log2(outer[mask_p])).sum())
    hxy2 = entropy_bits(outer.reshape(-1))
    if hx > 0:
        put("information_correlation_1", (hxy - hxy1) / hx)
    else:
        fs.add_undefined("glcm.information_correlation_1")
    inner = 1.0 - np.exp(-2.0 * (hxy2 - hxy))
    put("information_correlation_2", np.sqrt(max(inner, 0.0)))
    return fs


def glcm_features(matrices: list[np.ndarray], dvol: DiscreteVolume,
                  mode: str = "merge") -> FeatureSet:
    """Aggregate per-direction GLCMs: `merge` sums counts then computes once;
    `average` computes per direction and averages, skipping empty directions."""
    levels = level_grid(dvol).axis
    if mode == "merge":
        merged = np.zeros_like(matrices[0])
        for m in matrices:
            merged += m
        fs = _glcm_features_single(merged, levels)
    elif mode == "average":
        nonempty = [m for m in matrices if m.sum() > 0]
        if not nonempty:
            fs = _glcm_features_single(matrices[0], levels)
        else:
            sets = [_glcm_features_single(m, levels) for m in nonempty]
            fs = average_feature_sets(sets, _IDS)
    else:
        raise ValueError(f"unknown aggregation mode {mode!r}")
    fs.provenance["aggregation"] = mode
    return fs
