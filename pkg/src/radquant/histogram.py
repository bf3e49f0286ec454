"""Intensity-histogram and intensity-volume-histogram features."""
from __future__ import annotations

import numpy as np

from . import registry as reg
from .registry import FeatureSet
from .intensity import _stat_values, median_value
from .preprocess import DiscreteVolume


def _histogram(dvol: DiscreteVolume) -> tuple[np.ndarray, np.ndarray]:
    """Counts over the dense level axis (empty bins included)."""
    axis = dvol.level_axis()
    lv = dvol.roi_levels()
    counts = np.bincount(lv - axis[0], minlength=len(axis)).astype(np.int64)
    return axis, counts


def intensity_histogram_features(dvol: DiscreteVolume) -> FeatureSet:
    """The 23 histogram features of a discretized ROI.

    Statistics reuse the intensity-statistics formulas on the level data;
    mode ties resolve to the lowest level; entropy is log base 2 with
    0*log(0) := 0; gradients are central differences over the dense level
    axis, one-sided at the ends.
    """
    lv = dvol.roi_levels().astype(np.float64)
    axis, counts = _histogram(dvol)
    n = counts.sum()
    p = counts / n
    stats = _stat_values(lv)

    fs = FeatureSet()
    fs.provenance["discretization"] = dvol.spec.describe()

    def put(short, value, flag=""):
        fid = reg.feature_id(reg.CLS_HIST, short)
        if flag:
            fs.add_undefined(fid)
        else:
            fs.add(fid, value)

    for short in ("mean", "variance", "skewness", "kurtosis", "median",
                  "minimum", "percentile_10", "percentile_90", "maximum"):
        value, flag = stats[short]
        put(short, value, flag)
    put("mode", float(axis[int(np.argmax(counts))]))
    for short in ("interquartile_range", "range", "mean_absolute_deviation",
                  "robust_mean_absolute_deviation", "median_absolute_deviation",
                  "coefficient_of_variation", "quartile_coefficient_of_dispersion"):
        value, flag = stats[short]
        put(short, value, flag)
    nz = p[p > 0]
    put("entropy", float(-(nz * np.log2(nz)).sum()))
    put("uniformity", float((p ** 2).sum()))

    if len(axis) < 2:
        for short in ("maximum_gradient", "maximum_gradient_level",
                      "minimum_gradient", "minimum_gradient_level"):
            put(short, None, "undefined")
        return fs
    grad = np.empty(len(axis), dtype=np.float64)
    grad[1:-1] = (counts[2:] - counts[:-2]) / 2.0
    grad[0] = counts[1] - counts[0]
    grad[-1] = counts[-1] - counts[-2]
    hi = int(np.argmax(grad))
    lo = int(np.argmin(grad))
    put("maximum_gradient", float(grad[hi]))
    put("maximum_gradient_level", float(axis[hi]))
    put("minimum_gradient", float(grad[lo]))
    put("minimum_gradient_level", float(axis[lo]))
    return fs


def ivh_features(dvol: DiscreteVolume) -> FeatureSet:
    """The 7 intensity-volume-histogram features.

    nu(x) is the fraction of ROI voxels with level >= x; the intensity
    fraction gamma maps to the threshold min + gamma*(max - min). V10/V90
    evaluate nu at gamma 0.1/0.9; I10/I90 are the lowest level with
    nu <= 0.10/0.90 (the maximum level when no level qualifies); AUC is the
    trapezoid over the unit-step level axis.
    """
    lv = dvol.roi_levels().astype(np.float64)
    lo, hi = dvol.level_range
    fs = FeatureSet()
    fs.provenance["discretization"] = dvol.spec.describe()

    def put(short, value, flag=""):
        fid = reg.feature_id(reg.CLS_IVH, short)
        if flag:
            fs.add(fid, value, flag)
        else:
            fs.add(fid, value)

    if hi == lo:
        put("volume_fraction_10", 1.0, "degenerate")
        put("volume_fraction_90", 1.0, "degenerate")
        put("intensity_10", float(lo), "degenerate")
        put("intensity_90", float(lo), "degenerate")
        put("volume_fraction_difference", 0.0, "degenerate")
        put("intensity_difference", 0.0, "degenerate")
        put("area_under_curve", 1.0, "degenerate")
        return fs

    n = len(lv)

    def nu(threshold: float) -> float:
        return float((lv >= threshold).sum()) / n

    v10 = nu(lo + 0.10 * (hi - lo))
    v90 = nu(lo + 0.90 * (hi - lo))

    axis = np.arange(lo, hi + 1, dtype=np.float64)
    nu_axis = np.array([nu(x) for x in axis])

    def intensity_at(fraction: float) -> float:
        qualifying = axis[nu_axis <= fraction]
        return float(qualifying[0]) if len(qualifying) else float(hi)

    i10 = intensity_at(0.10)
    i90 = intensity_at(0.90)
    auc = float(((nu_axis[1:] + nu_axis[:-1]) / 2.0).sum() / (len(axis) - 1))

    put("volume_fraction_10", v10)
    put("volume_fraction_90", v90)
    put("intensity_10", i10)
    put("intensity_90", i90)
    put("volume_fraction_difference", v10 - v90)
    put("intensity_difference", i10 - i90)
    put("area_under_curve", auc)
    return fs


def basic_discretized_stats(dvol: DiscreteVolume) -> FeatureSet:
    """Mean/median/min/max/range of the discretized ROI levels.

    The preprocessing-diagnostic quintet; the values reuse the histogram-class
    registry ids since they are that class's location statistics.
    """
    lv = dvol.roi_levels().astype(np.float64)
    s = np.sort(lv)
    fs = FeatureSet()
    fs.provenance["discretization"] = dvol.spec.describe()
    fs.add(reg.feature_id(reg.CLS_HIST, "mean"), float(lv.mean()))
    fs.add(reg.feature_id(reg.CLS_HIST, "median"), median_value(s))
    fs.add(reg.feature_id(reg.CLS_HIST, "minimum"), float(s[0]))
    fs.add(reg.feature_id(reg.CLS_HIST, "maximum"), float(s[-1]))
    fs.add(reg.feature_id(reg.CLS_HIST, "range"), float(s[-1] - s[0]))
    return fs
