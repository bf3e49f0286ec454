"""Intensity-based statistical features and local intensity peaks."""
from __future__ import annotations

import numpy as np

from . import registry as reg
from .registry import FeatureSet
from .volume import GrayVolume, RoiMask, roi_values


def nearest_rank(sorted_values: np.ndarray, p: float) -> float:
    """Nearest-rank order statistic: the ceil(p*N)-th smallest value."""
    n = len(sorted_values)
    rank = max(1, int(np.ceil(p * n)))
    return float(sorted_values[min(rank, n) - 1])


def median_value(sorted_values: np.ndarray) -> float:
    n = len(sorted_values)
    mid = n // 2
    if n % 2:
        return float(sorted_values[mid])
    return float((sorted_values[mid - 1] + sorted_values[mid]) / 2.0)


def _stat_values(x: np.ndarray) -> dict[str, tuple[float, str]]:
    """The 18 statistics over a 1D sample; population (divisor N) moments."""
    n = len(x)
    s = np.sort(x)
    mean = float(x.mean())
    var = float(((x - mean) ** 2).mean())
    sd = np.sqrt(var)
    out: dict[str, tuple[float, str]] = {}
    out["mean"] = (mean, "")
    out["variance"] = (var, "")
    if sd > 0:
        out["skewness"] = (float(((x - mean) ** 3).mean()) / sd ** 3, "")
        out["kurtosis"] = (float(((x - mean) ** 4).mean()) / sd ** 4, "")
    else:
        out["skewness"] = (float("nan"), "undefined")
        out["kurtosis"] = (float("nan"), "undefined")
    med = median_value(s)
    p10 = nearest_rank(s, 0.10)
    p25 = nearest_rank(s, 0.25)
    p75 = nearest_rank(s, 0.75)
    p90 = nearest_rank(s, 0.90)
    out["median"] = (med, "")
    out["minimum"] = (float(s[0]), "")
    out["percentile_10"] = (p10, "")
    out["percentile_90"] = (p90, "")
    out["maximum"] = (float(s[-1]), "")
    out["interquartile_range"] = (p75 - p25, "")
    out["range"] = (float(s[-1] - s[0]), "")
    out["mean_absolute_deviation"] = (float(np.abs(x - mean).mean()), "")
    w = x[(x >= p10) & (x <= p90)]
    if len(w):
        out["robust_mean_absolute_deviation"] = (
            float(np.abs(w - w.mean()).mean()), "")
    else:
        out["robust_mean_absolute_deviation"] = (float("nan"), "undefined")
    out["median_absolute_deviation"] = (float(np.abs(x - med).mean()), "")
    if mean != 0:
        out["coefficient_of_variation"] = (sd / mean, "")
    else:
        out["coefficient_of_variation"] = (float("nan"), "undefined")
    if p75 + p25 != 0:
        out["quartile_coefficient_of_dispersion"] = ((p75 - p25) / (p75 + p25), "")
    else:
        out["quartile_coefficient_of_dispersion"] = (float("nan"), "undefined")
    energy = float((x ** 2).sum())
    out["energy"] = (energy, "")
    out["root_mean_square"] = (float(np.sqrt(energy / n)), "")
    return out


def intensity_statistics(volume: GrayVolume, mask: RoiMask) -> FeatureSet:
    """The 18 intensity-based statistics over ROI voxels.

    Variance uses divisor N; kurtosis is Pearson kurtosis (no -3 shift);
    percentiles use the nearest-rank order statistic. Undefined ratios are
    flagged, not raised.
    """
    x = roi_values(volume, mask).astype(np.float64)
    stats = _stat_values(x)
    fs = FeatureSet()
    for name in reg.class_features(reg.CLS_STAT):
        short = name.split(".", 1)[1]
        value, flag = stats[short]
        if flag:
            fs.add_undefined(name)
        else:
            fs.add(name, value)
    fs.provenance["kurtosis_convention"] = "pearson"
    return fs


# Radius of a 1 cm^3 sphere in mm.
PEAK_RADIUS_MM = (750.0 / np.pi) ** (1.0 / 3.0)


def _sphere_offsets(spacing) -> np.ndarray:
    """Index offsets (dz, dy, dx) whose physical distance is within the
    peak radius."""
    sx, sy, sz = spacing
    rx = int(np.floor(PEAK_RADIUS_MM / sx))
    ry = int(np.floor(PEAK_RADIUS_MM / sy))
    rz = int(np.floor(PEAK_RADIUS_MM / sz))
    dz, dy, dx = np.meshgrid(np.arange(-rz, rz + 1), np.arange(-ry, ry + 1),
                             np.arange(-rx, rx + 1), indexing="ij")
    dist2 = (dx * sx) ** 2 + (dy * sy) ** 2 + (dz * sz) ** 2
    keep = dist2 <= PEAK_RADIUS_MM ** 2 + 1e-9
    return np.stack([dz[keep], dy[keep], dx[keep]], axis=1)


def _sphere_mean(values: np.ndarray, center_zyx, offsets: np.ndarray) -> float:
    nz, ny, nx = values.shape
    pts = offsets + np.asarray(center_zyx)
    ok = ((pts[:, 0] >= 0) & (pts[:, 0] < nz)
          & (pts[:, 1] >= 0) & (pts[:, 1] < ny)
          & (pts[:, 2] >= 0) & (pts[:, 2] < nx))
    pts = pts[ok]
    return float(values[pts[:, 0], pts[:, 1], pts[:, 2]].mean())


def local_intensity(volume: GrayVolume, mask: RoiMask) -> FeatureSet:
    """Local and global intensity peaks.

    Peak = mean over the voxels of the whole image whose centers lie within
    a 1 cm^3 sphere (radius ~6.2035 mm) of the candidate center. The local
    peak centers on a maximum-intensity ROI voxel (ties: highest mean); the
    global peak maximizes the sphere mean over every ROI voxel.
    """
    offsets = _sphere_offsets(volume.spacing)
    vals = volume.values
    roi_idx = np.argwhere(mask.flags)
    roi_int = vals[mask.flags]
    means = np.array([_sphere_mean(vals, tuple(c), offsets) for c in roi_idx])
    at_max = roi_int == roi_int.max()
    fs = FeatureSet()
    fs.add(reg.feature_id(reg.CLS_LOCINT, "local_intensity_peak"),
           float(means[at_max].max()))
    fs.add(reg.feature_id(reg.CLS_LOCINT, "global_intensity_peak"),
           float(means.max()))
    return fs
