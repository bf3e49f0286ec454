"""Texture-matrix families over 3D 26-neighborhoods."""
from .directions import direction_set, neighbor_offsets_26
from .glcm import build_glcm, glcm_features
from .glrlm import build_glrlm, glrlm_features, merge_matrices
from .glszm import build_glszm, glszm_features
from .gldzm import build_gldzm, gldzm_features
from .ngtdm import NGTDM, build_ngtdm, ngtdm_features
from .ngldm import build_ngldm, ngldm_features

__all__ = [
    "direction_set", "neighbor_offsets_26",
    "build_glcm", "glcm_features",
    "build_glrlm", "glrlm_features", "merge_matrices",
    "build_glszm", "glszm_features",
    "build_gldzm", "gldzm_features",
    "NGTDM", "build_ngtdm", "ngtdm_features",
    "build_ngldm", "ngldm_features",
]
