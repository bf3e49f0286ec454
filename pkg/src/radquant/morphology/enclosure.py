"""Enclosing-body computations for morphology features.

Bounding volumes around a point cloud (mesh vertices or voxel centers):
axis-aligned and oriented bounding boxes, convex hull metrics, minimum
volume enclosing ellipsoid, and the exact surface area of a general
ellipsoid.
"""

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from scipy.special import ellipeinc, ellipkinc

__all__ = [
    "aabb_extents",
    "box_metrics",
    "convex_hull_metrics",
    "ombb_metrics",
    "mvee_semi_axes",
    "ellipsoid_area",
]


def aabb_extents(points):
    """Axis-aligned bounding box extents (3,) of a point cloud."""
    pts = np.asarray(points, dtype=np.float64)
    return pts.max(axis=0) - pts.min(axis=0)


def box_metrics(extents):
    """(volume, area) of a box with the given edge lengths."""
    a, b, c = (float(e) for e in extents)
    return a * b * c, 2.0 * (a * b + b * c + c * a)


def convex_hull_metrics(points):
    """(volume, area, hull_vertices) of the convex hull of a point cloud."""
    pts = np.asarray(points, dtype=np.float64)
    hull = ConvexHull(pts)
    return float(hull.volume), float(hull.area), pts[hull.vertices]


def _min_area_rect(uv):
    # Smallest-area enclosing rectangle of 2D points; one side of the
    # optimum is collinear with a hull edge (rotating calipers).
    try:
        hull2 = ConvexHull(uv)
        poly = uv[hull2.vertices]
    except QhullError:
        w, h = uv.max(axis=0) - uv.min(axis=0)
        return float(w), float(h)
    best = None
    edges = np.roll(poly, -1, axis=0) - poly
    lengths = np.linalg.norm(edges, axis=1)
    for edge, ln in zip(edges, lengths):
        if ln == 0.0:
            continue
        ux, uy = edge / ln
        rot = uv @ np.array([[ux, -uy], [uy, ux]])
        w, h = rot.max(axis=0) - rot.min(axis=0)
        if best is None or w * h < best[0] * best[1]:
            best = (float(w), float(h))
    if best is None:
        w, h = uv.max(axis=0) - uv.min(axis=0)
        best = (float(w), float(h))
    return best


def _pca_box(points):
    pts = np.asarray(points, dtype=np.float64)
    centered = pts - pts.mean(axis=0)
    if len(pts) < 2:
        return np.zeros(3)
    cov = np.cov(centered, rowvar=False)
    _, vecs = np.linalg.eigh(cov)
    proj = centered @ vecs
    return proj.max(axis=0) - proj.min(axis=0)


def ombb_metrics(points):
    """Oriented minimum bounding box (volume, area, approximate).

    Searches boxes with one face flush with a convex-hull facet and
    takes the smallest volume, measuring the in-plane rectangle with
    rotating calipers.  Falls back to a PCA-aligned box (flagged
    approximate) when the hull is degenerate.
    """
    pts = np.asarray(points, dtype=np.float64)
    try:
        hull = ConvexHull(pts)
    except QhullError:
        vol, area = box_metrics(_pca_box(pts))
        return vol, area, True
    verts = pts[hull.vertices]
    best = None
    seen = set()
    for eq in hull.equations:
        normal = eq[:3]
        normal = normal / np.linalg.norm(normal)
        key = tuple(np.round(np.abs(normal), 12))
        if key in seen:
            continue
        seen.add(key)
        # orthonormal in-plane frame
        ref = np.array([1.0, 0.0, 0.0])
        if abs(normal[0]) > 0.9:
            ref = np.array([0.0, 1.0, 0.0])
        u = np.cross(normal, ref)
        u /= np.linalg.norm(u)
        v = np.cross(normal, u)
        depth = verts @ normal
        height = float(depth.max() - depth.min())
        w, h = _min_area_rect(np.column_stack((verts @ u, verts @ v)))
        vol = w * h * height
        if best is None or vol < best[0]:
            best = (vol, 2.0 * (w * h + w * height + h * height))
    if best is None:
        vol, area = box_metrics(_pca_box(pts))
        return vol, area, True
    return float(best[0]), float(best[1]), False


def mvee_semi_axes(points, tol=1e-6, max_iter=10000):
    """Semi-axes (descending) of the minimum volume enclosing ellipsoid.

    Khachiyan's barycentric coordinate ascent on the dual problem,
    iterated until the duality gap is below `tol`.  Raises
    np.linalg.LinAlgError for degenerate (non full rank) point sets.
    """
    pts = np.asarray(points, dtype=np.float64)
    n, d = pts.shape
    q = np.column_stack((pts, np.ones(n)))
    u = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        x = q.T @ (q * u[:, None])
        m = np.einsum("ij,ij->i", q @ np.linalg.inv(x), q)
        j = int(np.argmax(m))
        maximum = m[j]
        step = (maximum - d - 1.0) / ((d + 1.0) * (maximum - 1.0))
        if maximum - d - 1.0 <= tol * (d + 1.0):
            break
        u *= 1.0 - step
        u[j] += step
    center = u @ pts
    cov = pts.T @ (pts * u[:, None]) - np.outer(center, center)
    shape = np.linalg.inv(cov) / d
    eigvals = np.linalg.eigvalsh(shape)
    if eigvals.min() <= 0.0:
        raise np.linalg.LinAlgError("degenerate enclosing ellipsoid")
    return np.sort(1.0 / np.sqrt(eigvals))[::-1]


def ellipsoid_area(a, b, c):
    """Exact surface area of an ellipsoid with semi-axes a >= b >= c.

    Uses the classical closed form in incomplete elliptic integrals,
    which reduces to the sphere, prolate and oblate formulas at the
    degenerate shapes.
    """
    a, b, c = sorted((float(a), float(b), float(c)), reverse=True)
    if c <= 0.0:
        return 0.0
    if a == c:
        return float(4.0 * np.pi * a * a)
    phi = np.arccos(c / a)
    s = np.sin(phi)
    # modulus parameter m = k^2, clipped against rounding at the spheroids
    m = min(1.0, max(0.0, (a * a * (b * b - c * c))
                     / (b * b * (a * a - c * c))))
    return float(2.0 * np.pi * c * c
                 + 2.0 * np.pi * a * b / s
                 * (ellipeinc(phi, m) * s * s + ellipkinc(phi, m) * np.cos(phi) ** 2))
