"""Shared texture-matrix plumbing.

Matrix conventions (also the contract the test oracles implement
independently):
  - level rows span the dense axis from the shift-mode floor (1 one-based,
    0 zero-based) to the maximum ROI level, empty rows included;
  - count columns span 1..max observed (runs, zone sizes, distances) or
    dependence counts 0..max observed;
  - feature formulas use actual level values and actual column values, and
    normalize by the matrix's own total.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..preprocess import DiscreteVolume
from ..registry import FeatureSet


@dataclass(frozen=True)
class LevelGrid:
    """Dense per-level view of a discrete ROI used by all builders."""
    levels: np.ndarray       # (nz, ny, nx) int64, outside-ROI 0
    roi: np.ndarray          # (nz, ny, nx) bool
    axis: np.ndarray         # dense level values, floor..max
    base: int                # axis[0]


def level_grid(dvol: DiscreteVolume) -> LevelGrid:
    axis = dvol.level_axis()
    return LevelGrid(levels=dvol.levels, roi=dvol.mask.flags,
                     axis=axis, base=int(axis[0]))


def entropy_bits(p: np.ndarray) -> float:
    """Shannon entropy, log base 2, with 0*log(0) := 0."""
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def rlm_style_features(counts: np.ndarray, level_values: np.ndarray,
                       col_values: np.ndarray, percentage_denominator: float,
                       ids: list[str]) -> FeatureSet:
    """The 16-feature family shared by run, zone, distance and dependence
    matrices. `ids` supplies the registry names in the canonical order:
    small, large, low-grey, high-grey, the four cross terms, grey-level
    non-uniformity (+n), column non-uniformity (+n), percentage, grey-level
    variance, column variance, entropy.
    """
    fs = FeatureSet()
    s = counts.astype(np.float64)
    n_s = s.sum()
    if n_s <= 0:
        for fid in ids:
            fs.add_undefined(fid)
        return fs
    p = s / n_s
    r_i = s.sum(axis=1)  # per level
    c_j = s.sum(axis=0)  # per column
    v = level_values.astype(np.float64)
    j = col_values.astype(np.float64)
    zero_level_mass = bool((r_i[v == 0] > 0).any())

    def put(fid, value):
        fs.add(fid, value)

    def put_levels(fid, value):
        # features dividing by a level value are undefined when level 0 carries mass
        if zero_level_mass:
            fs.add_undefined(fid)
        else:
            fs.add(fid, value)

    with np.errstate(divide="ignore", invalid="ignore"):
        inv_v2 = np.where(v > 0, 1.0 / np.where(v > 0, v, 1) ** 2, 0.0)
    inv_j2 = 1.0 / j ** 2

    put(ids[0], float((c_j * inv_j2).sum() / n_s))
    put(ids[1], float((c_j * j ** 2).sum() / n_s))
    put_levels(ids[2], float((r_i * inv_v2).sum() / n_s))
    put(ids[3], float((r_i * v ** 2).sum() / n_s))
    put_levels(ids[4], float((s * np.outer(inv_v2, inv_j2)).sum() / n_s))
    put(ids[5], float((s * np.outer(v ** 2, inv_j2)).sum() / n_s))
    put_levels(ids[6], float((s * np.outer(inv_v2, j ** 2)).sum() / n_s))
    put(ids[7], float((s * np.outer(v ** 2, j ** 2)).sum() / n_s))
    put(ids[8], float((r_i ** 2).sum() / n_s))
    put(ids[9], float((r_i ** 2).sum() / n_s ** 2))
    put(ids[10], float((c_j ** 2).sum() / n_s))
    put(ids[11], float((c_j ** 2).sum() / n_s ** 2))
    put(ids[12], float(n_s / percentage_denominator))
    mu_v = float((p.sum(axis=1) * v).sum())
    put(ids[13], float((p * (v[:, None] - mu_v) ** 2).sum()))
    mu_j = float((p.sum(axis=0) * j).sum())
    put(ids[14], float((p * (j[None, :] - mu_j) ** 2).sum()))
    put(ids[15], entropy_bits(p.reshape(-1)))
    return fs


def average_feature_sets(sets: list[FeatureSet], ids: list[str]) -> FeatureSet:
    """Per-feature mean over direction-wise sets; undefined values propagate."""
    fs = FeatureSet()
    for fid in ids:
        vals = [s[fid] for s in sets]
        if any(v.flag == "undefined" for v in vals):
            fs.add_undefined(fid)
        else:
            fs.add(fid, float(np.mean([v.value for v in vals])))
    return fs
