"""Shape and spatial-structure features of a segmented region.

The region is described twice: as the set of ROI voxel centers (for
moment and autocorrelation statistics) and as a closed triangle mesh of
its surface (for volume, area and the enclosing-body densities).
"""

import numpy as np
from scipy.spatial.distance import pdist

from ..registry import CLS_MORPH, FeatureSet, feature_id
from ..volume import GrayVolume, RoiMask, roi_values
from . import enclosure
from .mesh import TriangleMesh, marching_cubes, mesh_area, mesh_volume

__all__ = ["voxel_centers", "morphology_features"]


def voxel_centers(mask: RoiMask, spacing) -> np.ndarray:
    """(n, 3) array of ROI voxel center positions in mm (x, y, z)."""
    zyx = np.argwhere(mask.flags)
    sx, sy, sz = (float(s) for s in spacing)
    return np.column_stack((zyx[:, 2] * sx, zyx[:, 1] * sy, zyx[:, 0] * sz))


def _pca_eigenvalues(centers):
    # sample covariance of the voxel center cloud; descending eigenvalues
    if len(centers) < 2:
        return None
    cov = np.cov(centers, rowvar=False, ddof=1)
    vals = np.linalg.eigvalsh(cov)
    return np.maximum(vals[::-1], 0.0)


def _autocorrelation(centers, intensities):
    """Moran's I and Geary's C with inverse-distance weights."""
    n = len(centers)
    x = intensities - intensities.mean()
    denom = float((x * x).sum())
    if n < 2 or denom == 0.0:
        return None, None
    w_sum = 0.0
    moran_num = 0.0
    geary_num = 0.0
    chunk = max(1, int(2e7) // max(1, n))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        d = np.linalg.norm(centers[lo:hi, None, :] - centers[None, :, :], axis=2)
        w = np.zeros_like(d)
        nz = d > 0.0
        w[nz] = 1.0 / d[nz]
        w_sum += w.sum()
        moran_num += (w * np.outer(x[lo:hi], x)).sum()
        diff = intensities[lo:hi, None] - intensities[None, :]
        geary_num += (w * diff * diff).sum()
    moran = (n / w_sum) * moran_num / denom
    geary = ((n - 1) / (2.0 * w_sum)) * geary_num / denom
    return float(moran), float(geary)


def morphology_features(volume: GrayVolume, mask: RoiMask,
                        mesh: TriangleMesh | None = None) -> FeatureSet:
    """All 29 shape features of the masked region."""
    if mesh is None:
        mesh = marching_cubes(mask.flags, volume.spacing)
    fid = lambda name: feature_id(CLS_MORPH, name)
    fs = FeatureSet()

    vol = mesh_volume(mesh)
    area = mesh_area(mesh)
    spacing = volume.spacing
    voxel_vol = float(np.prod(spacing))
    n_v = mask.voxel_count
    intensities = roi_values(volume, mask)
    centers = voxel_centers(mask, spacing)

    fs.add(fid("volume_mesh"), vol)
    fs.add(fid("volume_voxel"), n_v * voxel_vol)
    fs.add(fid("surface_area"), area)
    fs.add(fid("surface_to_volume_ratio"), area / vol)
    sphere_area = (36.0 * np.pi * vol * vol) ** (1.0 / 3.0)
    fs.add(fid("compactness_1"), vol / (np.sqrt(np.pi) * area ** 1.5))
    fs.add(fid("compactness_2"), 36.0 * np.pi * vol * vol / area ** 3)
    fs.add(fid("spherical_disproportion"), area / sphere_area)
    fs.add(fid("sphericity"), sphere_area / area)
    fs.add(fid("asphericity"), (area ** 3 / (36.0 * np.pi * vol * vol)) ** (1.0 / 3.0) - 1.0)

    com_geom = centers.mean(axis=0)
    weight = intensities.sum()
    if weight != 0.0:
        com_weighted = (centers * intensities[:, None]).sum(axis=0) / weight
        fs.add(fid("centre_of_mass_shift"), float(np.linalg.norm(com_geom - com_weighted)))
    else:
        fs.add_undefined(fid("centre_of_mass_shift"))

    hull_vol = hull_area = None
    try:
        hull_vol, hull_area, hull_pts = enclosure.convex_hull_metrics(mesh.vertices)
        fs.add(fid("maximum_3d_diameter"), float(pdist(hull_pts).max()))
    except Exception:
        hull_pts = np.unique(mesh.vertices, axis=0)
        fs.add(fid("maximum_3d_diameter"), float(pdist(hull_pts).max())
               if len(hull_pts) > 1 else 0.0)

    eig = _pca_eigenvalues(centers)
    if eig is None:
        for name in ("major_axis_length", "minor_axis_length", "least_axis_length",
                     "elongation", "flatness"):
            fs.add_undefined(fid(name))
    else:
        fs.add(fid("major_axis_length"), 4.0 * np.sqrt(eig[0]))
        fs.add(fid("minor_axis_length"), 4.0 * np.sqrt(eig[1]))
        fs.add(fid("least_axis_length"), 4.0 * np.sqrt(eig[2]))
        if eig[0] > 0.0:
            fs.add(fid("elongation"), float(np.sqrt(eig[1] / eig[0])))
            fs.add(fid("flatness"), float(np.sqrt(eig[2] / eig[0])))
        else:
            fs.add_undefined(fid("elongation"))
            fs.add_undefined(fid("flatness"))

    aabb_vol, aabb_area = enclosure.box_metrics(enclosure.aabb_extents(mesh.vertices))
    fs.add(fid("volume_density_aabb"), vol / aabb_vol)
    fs.add(fid("area_density_aabb"), area / aabb_area)

    ombb_vol, ombb_area, approx = enclosure.ombb_metrics(mesh.vertices)
    ombb_flag = "approximate" if approx else ""
    if ombb_vol > 0.0:
        fs.add(fid("volume_density_ombb"), vol / ombb_vol, ombb_flag)
        fs.add(fid("area_density_ombb"), area / ombb_area, ombb_flag)
    else:
        fs.add_undefined(fid("volume_density_ombb"))
        fs.add_undefined(fid("area_density_ombb"))

    if eig is not None and eig[2] > 0.0:
        semi = 2.0 * np.sqrt(eig)
        aee_vol = 4.0 * np.pi * semi[0] * semi[1] * semi[2] / 3.0
        aee_area = enclosure.ellipsoid_area(*semi)
        fs.add(fid("volume_density_aee"), vol / aee_vol)
        fs.add(fid("area_density_aee"), area / aee_area)
    else:
        fs.add_undefined(fid("volume_density_aee"))
        fs.add_undefined(fid("area_density_aee"))

    try:
        semi = enclosure.mvee_semi_axes(hull_pts)
        mvee_vol = 4.0 * np.pi * semi[0] * semi[1] * semi[2] / 3.0
        mvee_area = enclosure.ellipsoid_area(*semi)
        fs.add(fid("volume_density_mvee"), vol / mvee_vol)
        fs.add(fid("area_density_mvee"), area / mvee_area)
    except np.linalg.LinAlgError:
        fs.add_undefined(fid("volume_density_mvee"))
        fs.add_undefined(fid("area_density_mvee"))

    if hull_vol is not None and hull_vol > 0.0:
        fs.add(fid("volume_density_convex_hull"), vol / hull_vol)
        fs.add(fid("area_density_convex_hull"), area / hull_area)
    else:
        fs.add_undefined(fid("volume_density_convex_hull"))
        fs.add_undefined(fid("area_density_convex_hull"))

    fs.add(fid("integrated_intensity"), float(intensities.mean()) * vol)

    moran, geary = _autocorrelation(centers, intensities)
    if moran is None:
        fs.add_undefined(fid("moran_i"))
        fs.add_undefined(fid("geary_c"))
    else:
        fs.add(fid("moran_i"), moran)
        fs.add(fid("geary_c"), geary)

    fs.provenance["mesher"] = "midpoint-mc/apex-0.0022"
    return fs
