"""Canonical feature registry: 173 standardized features in 11 classes.

Every value the engine emits carries one of these identifiers; free-text
feature names only appear on the ingestion side (see conformance.map_aliases).
"""
from __future__ import annotations

from dataclasses import dataclass, field

CLS_MORPH = "morphology"
CLS_LOCINT = "local_intensity"
CLS_STAT = "intensity_statistics"
CLS_HIST = "intensity_histogram"
CLS_IVH = "intensity_volume_histogram"
CLS_GLCM = "glcm"
CLS_GLRLM = "glrlm"
CLS_GLSZM = "glszm"
CLS_GLDZM = "gldzm"
CLS_NGTDM = "ngtdm"
CLS_NGLDM = "ngldm"

# Expected per-class feature counts; FeatureSet enforces these as caps.
CLASS_COUNTS = {
    CLS_MORPH: 29,
    CLS_LOCINT: 2,
    CLS_STAT: 18,
    CLS_HIST: 23,
    CLS_IVH: 7,
    CLS_GLCM: 25,
    CLS_GLRLM: 16,
    CLS_GLSZM: 16,
    CLS_GLDZM: 16,
    CLS_NGTDM: 5,
    CLS_NGLDM: 16,
}

# Broad categories used by the popularity metrics.
CATEGORY_OF_CLASS = {
    CLS_MORPH: "morphology",
    CLS_LOCINT: "statistic/histogram",
    CLS_STAT: "statistic/histogram",
    CLS_HIST: "statistic/histogram",
    CLS_IVH: "statistic/histogram",
    CLS_GLCM: "texture",
    CLS_GLRLM: "texture",
    CLS_GLSZM: "texture",
    CLS_GLDZM: "texture",
    CLS_NGTDM: "texture",
    CLS_NGLDM: "texture",
}

_MORPH = [
    "volume_mesh",
    "volume_voxel",
    "surface_area",
    "surface_to_volume_ratio",
    "compactness_1",
    "compactness_2",
    "spherical_disproportion",
    "sphericity",
    "asphericity",
    "centre_of_mass_shift",
    "maximum_3d_diameter",
    "major_axis_length",
    "minor_axis_length",
    "least_axis_length",
    "elongation",
    "flatness",
    "volume_density_aabb",
    "area_density_aabb",
    "volume_density_ombb",
    "area_density_ombb",
    "volume_density_aee",
    "area_density_aee",
    "volume_density_mvee",
    "area_density_mvee",
    "volume_density_convex_hull",
    "area_density_convex_hull",
    "integrated_intensity",
    "moran_i",
    "geary_c",
]

_LOCINT = [
    "local_intensity_peak",
    "global_intensity_peak",
]

_STAT = [
    "mean",
    "variance",
    "skewness",
    "kurtosis",
    "median",
    "minimum",
    "percentile_10",
    "percentile_90",
    "maximum",
    "interquartile_range",
    "range",
    "mean_absolute_deviation",
    "robust_mean_absolute_deviation",
    "median_absolute_deviation",
    "coefficient_of_variation",
    "quartile_coefficient_of_dispersion",
    "energy",
    "root_mean_square",
]

_HIST = [
    "mean",
    "variance",
    "skewness",
    "kurtosis",
    "median",
    "minimum",
    "percentile_10",
    "percentile_90",
    "maximum",
    "mode",
    "interquartile_range",
    "range",
    "mean_absolute_deviation",
    "robust_mean_absolute_deviation",
    "median_absolute_deviation",
    "coefficient_of_variation",
    "quartile_coefficient_of_dispersion",
    "entropy",
    "uniformity",
    "maximum_gradient",
    "maximum_gradient_level",
    "minimum_gradient",
    "minimum_gradient_level",
]

_IVH = [
    "volume_fraction_10",
    "volume_fraction_90",
    "intensity_10",
    "intensity_90",
    "volume_fraction_difference",
    "intensity_difference",
    "area_under_curve",
]

_GLCM = [
    "joint_maximum",
    "joint_average",
    "joint_variance",
    "joint_entropy",
    "difference_average",
    "difference_variance",
    "difference_entropy",
    "sum_average",
    "sum_variance",
    "sum_entropy",
    "angular_second_moment",
    "contrast",
    "dissimilarity",
    "inverse_difference",
    "inverse_difference_normalised",
    "inverse_difference_moment",
    "inverse_difference_moment_normalised",
    "inverse_variance",
    "correlation",
    "autocorrelation",
    "cluster_tendency",
    "cluster_shade",
    "cluster_prominence",
    "information_correlation_1",
    "information_correlation_2",
]

_GLRLM = [
    "short_run_emphasis",
    "long_run_emphasis",
    "low_grey_level_run_emphasis",
    "high_grey_level_run_emphasis",
    "short_run_low_grey_level_emphasis",
    "short_run_high_grey_level_emphasis",
    "long_run_low_grey_level_emphasis",
    "long_run_high_grey_level_emphasis",
    "grey_level_non_uniformity",
    "grey_level_non_uniformity_normalised",
    "run_length_non_uniformity",
    "run_length_non_uniformity_normalised",
    "run_percentage",
    "grey_level_variance",
    "run_length_variance",
    "run_entropy",
]

_GLSZM = [
    "small_zone_emphasis",
    "large_zone_emphasis",
    "low_grey_level_zone_emphasis",
    "high_grey_level_zone_emphasis",
    "small_zone_low_grey_level_emphasis",
    "small_zone_high_grey_level_emphasis",
    "large_zone_low_grey_level_emphasis",
    "large_zone_high_grey_level_emphasis",
    "grey_level_non_uniformity",
    "grey_level_non_uniformity_normalised",
    "zone_size_non_uniformity",
    "zone_size_non_uniformity_normalised",
    "zone_percentage",
    "grey_level_variance",
    "zone_size_variance",
    "zone_size_entropy",
]

_GLDZM = [
    "small_distance_emphasis",
    "large_distance_emphasis",
    "low_grey_level_zone_emphasis",
    "high_grey_level_zone_emphasis",
    "small_distance_low_grey_level_emphasis",
    "small_distance_high_grey_level_emphasis",
    "large_distance_low_grey_level_emphasis",
    "large_distance_high_grey_level_emphasis",
    "grey_level_non_uniformity",
    "grey_level_non_uniformity_normalised",
    "zone_distance_non_uniformity",
    "zone_distance_non_uniformity_normalised",
    "zone_percentage",
    "grey_level_variance",
    "zone_distance_variance",
    "zone_distance_entropy",
]

_NGTDM = [
    "coarseness",
    "contrast",
    "busyness",
    "complexity",
    "strength",
]

_NGLDM = [
    "low_dependence_emphasis",
    "high_dependence_emphasis",
    "low_grey_level_count_emphasis",
    "high_grey_level_count_emphasis",
    "low_dependence_low_grey_level_emphasis",
    "low_dependence_high_grey_level_emphasis",
    "high_dependence_low_grey_level_emphasis",
    "high_dependence_high_grey_level_emphasis",
    "grey_level_non_uniformity",
    "grey_level_non_uniformity_normalised",
    "dependence_count_non_uniformity",
    "dependence_count_non_uniformity_normalised",
    "dependence_count_percentage",
    "grey_level_variance",
    "dependence_count_variance",
    "dependence_count_entropy",
]

_BY_CLASS = {
    CLS_MORPH: _MORPH,
    CLS_LOCINT: _LOCINT,
    CLS_STAT: _STAT,
    CLS_HIST: _HIST,
    CLS_IVH: _IVH,
    CLS_GLCM: _GLCM,
    CLS_GLRLM: _GLRLM,
    CLS_GLSZM: _GLSZM,
    CLS_GLDZM: _GLDZM,
    CLS_NGTDM: _NGTDM,
    CLS_NGLDM: _NGLDM,
}

_PREFIX = {
    CLS_MORPH: "morph",
    CLS_LOCINT: "loc_int",
    CLS_STAT: "int_stat",
    CLS_HIST: "int_hist",
    CLS_IVH: "ivh",
    CLS_GLCM: "glcm",
    CLS_GLRLM: "glrlm",
    CLS_GLSZM: "glszm",
    CLS_GLDZM: "gldzm",
    CLS_NGTDM: "ngtdm",
    CLS_NGLDM: "ngldm",
}

CLASS_ORDER = list(_BY_CLASS)


def feature_id(cls: str, name: str) -> str:
    return f"{_PREFIX[cls]}.{name}"


def class_features(cls: str) -> list[str]:
    """Canonical ordered feature ids of one class."""
    return [feature_id(cls, n) for n in _BY_CLASS[cls]]


def all_features() -> list[str]:
    out = []
    for cls in CLASS_ORDER:
        out.extend(class_features(cls))
    return out


def class_of(fid: str) -> str:
    prefix = fid.split(".", 1)[0]
    for cls, p in _PREFIX.items():
        if p == prefix:
            return cls
    raise KeyError(f"unknown feature id {fid!r}")


_ALL = frozenset(all_features())


def is_registered(fid: str) -> bool:
    return fid in _ALL


@dataclass(frozen=True)
class FeatureValue:
    """One extracted value; `flag` is empty for plain numeric results."""
    id: str
    cls: str
    value: float
    flag: str = ""

    @property
    def defined(self) -> bool:
        return self.flag != "undefined"


@dataclass
class FeatureSet:
    """Ordered feature values plus extraction provenance."""
    values: list[FeatureValue] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def add(self, fid: str, value, flag: str = "") -> None:
        cls = class_of(fid)
        if not is_registered(fid):
            raise KeyError(f"feature id {fid!r} not in registry")
        if any(v.id == fid for v in self.values):
            raise ValueError(f"duplicate feature id {fid!r}")
        self.values.append(FeatureValue(fid, cls, float(value), flag))
        n = sum(1 for v in self.values if v.cls == cls)
        if n > CLASS_COUNTS[cls]:
            raise ValueError(f"class {cls} exceeds registry count")

    def add_undefined(self, fid: str) -> None:
        cls = class_of(fid)
        self.values.append(FeatureValue(fid, cls, float("nan"), "undefined"))

    def extend(self, other: "FeatureSet") -> None:
        for v in other.values:
            if any(w.id == v.id for w in self.values):
                raise ValueError(f"duplicate feature id {v.id!r}")
            self.values.append(v)

    def __getitem__(self, fid: str) -> FeatureValue:
        for v in self.values:
            if v.id == fid:
                return v
        raise KeyError(fid)

    def __contains__(self, fid: str) -> bool:
        return any(v.id == fid for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def ids(self) -> list[str]:
        return [v.id for v in self.values]
