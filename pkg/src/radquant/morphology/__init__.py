"""Morphology: surface meshing and shape features."""

from .enclosure import (aabb_extents, box_metrics, convex_hull_metrics,
                        ellipsoid_area, mvee_semi_axes, ombb_metrics)
from .features import morphology_features, voxel_centers
from .mesh import (TriangleMesh, is_watertight, marching_cubes, mesh_area,
                   mesh_volume, save_obj)

__all__ = [
    "TriangleMesh",
    "marching_cubes",
    "mesh_volume",
    "mesh_area",
    "is_watertight",
    "save_obj",
    "morphology_features",
    "voxel_centers",
    "aabb_extents",
    "box_metrics",
    "convex_hull_metrics",
    "ombb_metrics",
    "mvee_semi_axes",
    "ellipsoid_area",
]
