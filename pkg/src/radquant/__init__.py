"""radquant: standardized radiomics feature extraction and benchmarking.

Computes the 173 standardized features (morphology, intensity,
histogram and six texture families) from 3D voxel volumes with ROI
masks, scores outputs against benchmark tables, and quantifies
cross-software feature coverage.
"""

__version__ = "0.1.0"

from .preprocess import (ONE_BASED, ZERO_BASED, DiscretizationSpec,
                         DiscreteVolume, InterpolationSpec, discretize,
                         interpolate)
from .registry import (CLASS_COUNTS, CLASS_ORDER, FeatureSet, FeatureValue,
                       all_features, class_features, class_of, feature_id)
from .volume import (GrayVolume, RoiMask, VolumeError, check_phantom,
                     load_mask, load_volume, roi_values, save_mask,
                     save_volume)

from .features import extract_all  # noqa: E402  (needs the names above)

__all__ = [
    "__version__",
    "GrayVolume",
    "RoiMask",
    "VolumeError",
    "load_volume",
    "load_mask",
    "save_volume",
    "save_mask",
    "roi_values",
    "check_phantom",
    "DiscretizationSpec",
    "InterpolationSpec",
    "DiscreteVolume",
    "discretize",
    "interpolate",
    "ONE_BASED",
    "ZERO_BASED",
    "FeatureSet",
    "FeatureValue",
    "feature_id",
    "class_features",
    "all_features",
    "class_of",
    "CLASS_ORDER",
    "CLASS_COUNTS",
    "extract_all",
]
