"""Whole-pipeline feature extraction.

Orchestrates preprocessing and every feature class into one FeatureSet:
volume + mask -> optional resampling -> continuous-domain features
(morphology, local intensity, intensity statistics) and discretized
features (histogram, volume histogram, six texture families).
"""

from .histogram import intensity_histogram_features, ivh_features
from .intensity import intensity_statistics, local_intensity
from .morphology import marching_cubes, morphology_features
from .preprocess import (DiscretizationSpec, InterpolationSpec, discretize,
                         interpolate)
from .registry import (CLASS_ORDER, CLS_GLCM, CLS_GLDZM, CLS_GLRLM, CLS_GLSZM,
                       CLS_HIST, CLS_IVH, CLS_LOCINT, CLS_MORPH, CLS_NGLDM,
                       CLS_NGTDM, CLS_STAT, FeatureSet)
from .texture import (build_glcm, build_gldzm, build_glrlm, build_glszm,
                      build_ngldm, build_ngtdm, glcm_features, gldzm_features,
                      glrlm_features, glszm_features, ngldm_features,
                      ngtdm_features)
from .volume import GrayVolume, RoiMask

__all__ = ["extract_all", "DISCRETE_CLASSES"]

DISCRETE_CLASSES = (CLS_HIST, CLS_IVH, CLS_GLCM, CLS_GLRLM, CLS_GLSZM,
                    CLS_GLDZM, CLS_NGTDM, CLS_NGLDM)


def extract_all(volume: GrayVolume, mask: RoiMask,
                disc_spec: DiscretizationSpec,
                interp_spec: InterpolationSpec | None = None,
                aggregation: str = "merge",
                ngldm_alpha: int = 0,
                distance: int = 1,
                classes=None,
                mesh=None) -> FeatureSet:
    """Compute the requested feature classes (default: all 173 features).

    `classes` is an iterable of registry class names; `mesh` may carry a
    precomputed surface mesh for the morphology class.
    """
    if classes is None:
        wanted = list(CLASS_ORDER)
    else:
        wanted = list(classes)
        unknown = [c for c in wanted if c not in CLASS_ORDER]
        if unknown:
            raise ValueError(f"unknown feature classes: {unknown}")

    if interp_spec is not None:
        volume, mask = interpolate(volume, mask, interp_spec)

    fs = FeatureSet()
    if CLS_MORPH in wanted:
        if mesh is None:
            mesh = marching_cubes(mask.flags, volume.spacing)
        morph = morphology_features(volume, mask, mesh)
        fs.extend(morph)
        fs.provenance.update(morph.provenance)
    if CLS_LOCINT in wanted:
        fs.extend(local_intensity(volume, mask))
    if CLS_STAT in wanted:
        stats = intensity_statistics(volume, mask)
        fs.extend(stats)
        fs.provenance.update(stats.provenance)

    if any(c in wanted for c in DISCRETE_CLASSES):
        dvol = discretize(volume, mask, disc_spec)
        if CLS_HIST in wanted:
            fs.extend(intensity_histogram_features(dvol))
        if CLS_IVH in wanted:
            fs.extend(ivh_features(dvol))
        if CLS_GLCM in wanted:
            glcm = glcm_features(build_glcm(dvol, distance), dvol, aggregation)
            fs.extend(glcm)
            fs.provenance.update(glcm.provenance)
        if CLS_GLRLM in wanted:
            fs.extend(glrlm_features(build_glrlm(dvol, distance), dvol, aggregation))
        if CLS_GLSZM in wanted:
            fs.extend(glszm_features(build_glszm(dvol), dvol))
        if CLS_GLDZM in wanted:
            fs.extend(gldzm_features(build_gldzm(dvol), dvol))
        if CLS_NGTDM in wanted:
            fs.extend(ngtdm_features(build_ngtdm(dvol)))
        if CLS_NGLDM in wanted:
            fs.extend(ngldm_features(build_ngldm(dvol, ngldm_alpha), dvol))

    fs.provenance.setdefault("aggregation", aggregation)
    fs.provenance["discretization"] = disc_spec.describe()
    fs.provenance["ngldm_alpha"] = ngldm_alpha
    fs.provenance["distance"] = distance
    return fs
