"""Independent brute-force reference implementations for tests.

Everything here is written as plain per-voxel python loops so the fast
array implementations in the package are checked against a second,
structurally different computation.  Conventions mirrored here:

- level grids are (nz, ny, nx) int arrays, 0 outside the ROI when the
  lowest level is 1 (one-based) and carried separately otherwise;
- matrix rows span the dense level axis from the shift floor (1 or 0)
  to the maximum observed level, including empty rows;
- matrix columns span 1..max observed (run length, zone size, zone
  distance) or 0..max observed dependence count.
"""

from collections import deque

import numpy as np

DIRECTIONS_13 = []
for dz in (-1, 0, 1):
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if (dz, dy, dx) > (0, 0, 0):
                DIRECTIONS_13.append((dx, dy, dz))

OFFSETS_26 = [(dx, dy, dz)
              for dz in (-1, 0, 1) for dy in (-1, 0, 1) for dx in (-1, 0, 1)
              if (dx, dy, dz) != (0, 0, 0)]


def _axis(levels, roi, base):
    lv = levels[roi]
    return base, int(lv.max())


def brute_glcm(levels, roi, base, direction, delta=1):
    """Symmetric co-occurrence counts for one direction (dx, dy, dz)."""
    lo, hi = _axis(levels, roi, base)
    n = hi - lo + 1
    m = np.zeros((n, n), dtype=np.int64)
    nz, ny, nx = levels.shape
    dx, dy, dz = (delta * d for d in direction)
    for z in range(nz):
        for y in range(ny):
            for x in range(nx):
                if not roi[z, y, x]:
                    continue
                z2, y2, x2 = z + dz, y + dy, x + dx
                if not (0 <= z2 < nz and 0 <= y2 < ny and 0 <= x2 < nx):
                    continue
                if not roi[z2, y2, x2]:
                    continue
                a = levels[z, y, x] - lo
                b = levels[z2, y2, x2] - lo
                m[a, b] += 1
                m[b, a] += 1
    return m


def brute_glrlm(levels, roi, base, direction, delta=1):
    """Run-length counts for one direction."""
    lo, hi = _axis(levels, roi, base)
    nz, ny, nx = levels.shape
    dx, dy, dz = (delta * d for d in direction)
    runs = []
    for z in range(nz):
        for y in range(ny):
            for x in range(nx):
                if not roi[z, y, x]:
                    continue
                pz, py, px = z - dz, y - dy, x - dx
                if (0 <= pz < nz and 0 <= py < ny and 0 <= px < nx
                        and roi[pz, py, px]
                        and levels[pz, py, px] == levels[z, y, x]):
                    continue  # not a run start
                length = 1
                cz, cy, cx = z + dz, y + dy, x + dx
                while (0 <= cz < nz and 0 <= cy < ny and 0 <= cx < nx
                       and roi[cz, cy, cx]
                       and levels[cz, cy, cx] == levels[z, y, x]):
                    length += 1
                    cz, cy, cx = cz + dz, cy + dy, cx + dx
                runs.append((levels[z, y, x] - lo, length))
    if not runs:
        return np.zeros((hi - lo + 1, 1), dtype=np.int64)
    max_len = max(length for _, length in runs)
    m = np.zeros((hi - lo + 1, max_len), dtype=np.int64)
    for lev, length in runs:
        m[lev, length - 1] += 1
    return m


def brute_zones(levels, roi):
    """26-connected equal-level zones: list of (level, voxel list)."""
    nz, ny, nx = levels.shape
    seen = np.zeros_like(roi, dtype=bool)
    zones = []
    for z in range(nz):
        for y in range(ny):
            for x in range(nx):
                if not roi[z, y, x] or seen[z, y, x]:
                    continue
                lev = levels[z, y, x]
                voxels = []
                queue = deque([(z, y, x)])
                seen[z, y, x] = True
                while queue:
                    cz, cy, cx = queue.popleft()
                    voxels.append((cz, cy, cx))
                    for dx, dy, dz in OFFSETS_26:
                        z2, y2, x2 = cz + dz, cy + dy, cx + dx
                        if not (0 <= z2 < nz and 0 <= y2 < ny and 0 <= x2 < nx):
                            continue
                        if seen[z2, y2, x2] or not roi[z2, y2, x2]:
                            continue
                        if levels[z2, y2, x2] != lev:
                            continue
                        seen[z2, y2, x2] = True
                        queue.append((z2, y2, x2))
                zones.append((lev, voxels))
    return zones


def brute_glszm(levels, roi, base):
    lo, hi = _axis(levels, roi, base)
    zones = brute_zones(levels, roi)
    max_size = max(len(v) for _, v in zones)
    m = np.zeros((hi - lo + 1, max_size), dtype=np.int64)
    for lev, voxels in zones:
        m[lev - lo, len(voxels) - 1] += 1
    return m


def brute_distance_map(roi):
    """City-block distance to the nearest voxel outside the ROI, where
    the grid is surrounded by outside voxels (border distance 1)."""
    nz, ny, nx = roi.shape
    dist = np.full(roi.shape, -1, dtype=np.int64)
    queue = deque()
    for z in range(nz):
        for y in range(ny):
            for x in range(nx):
                if not roi[z, y, x]:
                    continue
                if (z in (0, nz - 1) or y in (0, ny - 1) or x in (0, nx - 1)):
                    dist[z, y, x] = 1
                    queue.append((z, y, x))
                    continue
                for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0),
                                   (0, -1, 0), (0, 0, 1), (0, 0, -1)):
                    if not roi[z + dz, y + dy, x + dx]:
                        dist[z, y, x] = 1
                        queue.append((z, y, x))
                        break
    while queue:
        z, y, x = queue.popleft()
        for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0),
                           (0, -1, 0), (0, 0, 1), (0, 0, -1)):
            z2, y2, x2 = z + dz, y + dy, x + dx
            if not (0 <= z2 < nz and 0 <= y2 < ny and 0 <= x2 < nx):
                continue
            if roi[z2, y2, x2] and dist[z2, y2, x2] < 0:
                dist[z2, y2, x2] = dist[z, y, x] + 1
                queue.append((z2, y2, x2))
    return dist


def brute_gldzm(levels, roi, base):
    lo, hi = _axis(levels, roi, base)
    dist = brute_distance_map(roi)
    zones = brute_zones(levels, roi)
    entries = [(lev, min(dist[v] for v in voxels)) for lev, voxels in zones]
    max_d = max(d for _, d in entries)
    m = np.zeros((hi - lo + 1, max_d), dtype=np.int64)
    for lev, d in entries:
        m[lev - lo, d - 1] += 1
    return m


def brute_ngtdm(levels, roi, base):
    """(n_i, s_i) per dense level: occurrence counts of voxels with at
    least one in-ROI neighbor, and summed |level - neighborhood mean|."""
    lo, hi = _axis(levels, roi, base)
    n = hi - lo + 1
    n_i = np.zeros(n, dtype=np.int64)
    s_i = np.zeros(n, dtype=np.float64)
    nz, ny, nx = levels.shape
    for z in range(nz):
        for y in range(ny):
            for x in range(nx):
                if not roi[z, y, x]:
                    continue
                nb = []
                for dx, dy, dz in OFFSETS_26:
                    z2, y2, x2 = z + dz, y + dy, x + dx
                    if (0 <= z2 < nz and 0 <= y2 < ny and 0 <= x2 < nx
                            and roi[z2, y2, x2]):
                        nb.append(levels[z2, y2, x2])
                if not nb:
                    continue
                i = levels[z, y, x] - lo
                n_i[i] += 1
                s_i[i] += abs(levels[z, y, x] - sum(nb) / len(nb))
    return n_i, s_i


def brute_ngldm(levels, roi, base, alpha=0):
    """Dependence counts: matrix rows = dense levels, column j = number
    of voxels with exactly j neighbors within level tolerance alpha."""
    lo, hi = _axis(levels, roi, base)
    nz, ny, nx = levels.shape
    counts = []
    for z in range(nz):
        for y in range(ny):
            for x in range(nx):
                if not roi[z, y, x]:
                    continue
                k = 0
                for dx, dy, dz in OFFSETS_26:
                    z2, y2, x2 = z + dz, y + dy, x + dx
                    if (0 <= z2 < nz and 0 <= y2 < ny and 0 <= x2 < nx
                            and roi[z2, y2, x2]
                            and abs(int(levels[z2, y2, x2]) - int(levels[z, y, x])) <= alpha):
                        k += 1
                counts.append((levels[z, y, x] - lo, k))
    max_k = max(k for _, k in counts)
    m = np.zeros((hi - lo + 1, max_k + 1), dtype=np.int64)
    for lev, k in counts:
        m[lev, k] += 1
    return m


def hull_volume(points):
    """Convex hull volume of a point cloud (oracle for mesh volumes)."""
    from scipy.spatial import ConvexHull
    return float(ConvexHull(np.asarray(points, dtype=np.float64)).volume)


def random_discrete_case(rng, max_dim=4, max_levels=4, one_based=True):
    """Random small level grid + ROI for oracle equivalence runs."""
    dims = rng.integers(1, max_dim + 1, size=3)
    roi = rng.random(tuple(dims)) < rng.uniform(0.3, 0.9)
    while not roi.any():
        roi = rng.random(tuple(dims)) < 0.6
    base = 1 if one_based else 0
    levels = rng.integers(base, base + max_levels, size=tuple(dims))
    levels = np.where(roi, levels, 0)
    return levels.astype(np.int64), roi
