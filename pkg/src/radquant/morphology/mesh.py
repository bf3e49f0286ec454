"""Isosurface meshing of binary voxel masks.

Midpoint marching cubes: the mask is zero-padded by one voxel so the
surface always closes, each 2x2x2 cell of voxel centers is classified by
its inside/outside pattern, and cut vertices are placed at the midpoints
of cell edges that cross the surface.  Cut polygons are assembled from
per-face segments with a fixed resolution of the ambiguous face case
(two diagonal inside corners stay separated), which makes adjacent cells
agree on shared faces and every produced mesh watertight.

Polygons with more than three vertices are triangulated around an
interior apex placed at the polygon centroid, lifted along the polygon
normal by ``APEX_LIFT`` times the polygon perimeter.  The construction
is purely geometric, so meshes transform exactly under grid axis
permutations and under uniform spacing changes.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "TriangleMesh",
    "marching_cubes",
    "mesh_volume",
    "mesh_area",
    "is_watertight",
    "save_obj",
]

# Lift of interior apex vertices along the outward polygon normal, as a
# fraction of the polygon perimeter.  Fixes the triangulation convention
# for non-triangular cut polygons.
APEX_LIFT = 0.0022

# Corner c of a cell occupies grid offset ((c>>0)&1, (c>>1)&1, (c>>2)&1)
# on the (z, y, x) axes.
_CORNER = [((c >> 0) & 1, (c >> 1) & 1, (c >> 2) & 1) for c in range(8)]

# 12 cell edges as corner pairs, grouped by axis.
_EDGES = []
for _axis in range(3):
    for _c in range(8):
        if not (_c >> _axis) & 1:
            _EDGES.append((_c, _c | (1 << _axis)))
_EDGE_INDEX = {e: i for i, e in enumerate(_EDGES)}
_EDGE_INDEX.update({(b, a): i for i, (a, b) in enumerate(_EDGES)})

_EDGE_AXIS = []
_EDGE_BASE = []
for _a, _b in _EDGES:
    _ax = next(t for t in range(3) if _CORNER[_a][t] != _CORNER[_b][t])
    _EDGE_AXIS.append(_ax)
    _EDGE_BASE.append(tuple(min(_CORNER[_a][t], _CORNER[_b][t]) for t in range(3)))


def _face_corners(axis, side):
    # 4 corners of a cell face, counter-clockwise seen from outside the
    # cell; (axis+1, axis+2) is the even permutation, swapped on the
    # low side where the outward normal points the other way.
    u, v = (axis + 1) % 3, (axis + 2) % 3
    if side == 0:
        u, v = v, u
    return [side << axis | uu << u | vv << v
            for uu, vv in ((0, 0), (1, 0), (1, 1), (0, 1))]


_FACES = [_face_corners(a, s) for a in range(3) for s in (0, 1)]


def _face_segments(pattern, corners):
    # Directed cut segments on one face: walking the corner cycle, a
    # segment runs from an inside->outside crossing to the
    # outside->inside crossing that precedes it, so two diagonal inside
    # corners stay separated and the inside region lies left of the
    # segment seen from outside.
    inside = [(pattern >> c) & 1 for c in corners]
    if sum(inside) in (0, 4):
        return []
    crossings = []
    for t in range(4):
        a, b = corners[t], corners[(t + 1) % 4]
        if inside[t] != inside[(t + 1) % 4]:
            kind = "down" if inside[t] else "up"
            crossings.append((t, kind, _EDGE_INDEX[(a, b)]))
    downs = [c for c in crossings if c[1] == "down"]
    ups = [c for c in crossings if c[1] == "up"]
    segs = []
    for d in downs:
        u = min(ups, key=lambda u: (d[0] - u[0]) % 4)
        segs.append((d[2], u[2]))
    return segs


def _build_table():
    # pattern -> tuple of cut polygons, each a tuple of local edge ids
    # in outward orientation for (x, y, z) coordinates.
    table = []
    for pattern in range(256):
        nxt = {}
        for face in _FACES:
            for a, b in _face_segments(pattern, face):
                nxt[a] = b
        loops = []
        seen = set()
        for start in sorted(nxt):
            if start in seen:
                continue
            loop = [start]
            seen.add(start)
            cur = nxt[start]
            while cur != start:
                loop.append(cur)
                seen.add(cur)
                cur = nxt[cur]
            loops.append(tuple(loop))
        table.append(tuple(loops))
    return tuple(table)


_TABLE = _build_table()


@dataclass(frozen=True)
class TriangleMesh:
    """Triangle surface mesh with vertices in millimeters (x, y, z)."""

    vertices: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.vertices, dtype=np.float64))
        f = np.ascontiguousarray(np.asarray(self.faces, dtype=np.int64))
        if v.ndim != 2 or v.shape[1] != 3:
            raise ValueError("vertices must be an (n, 3) array")
        if f.ndim != 2 or f.shape[1] != 3:
            raise ValueError("faces must be an (m, 3) array")
        if f.size and (f.min() < 0 or f.max() >= len(v)):
            raise ValueError("face index out of range")
        v.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "faces", f)

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_faces(self):
        return len(self.faces)


def marching_cubes(mask, spacing, level=0.5):
    """Mesh the level-0.5 isosurface of a binary mask.

    ``mask`` is indexed (z, y, x); ``spacing`` is (sx, sy, sz) in mm.
    Voxel centers sit at grid points, vertex positions are in mm with
    the center of voxel (0, 0, 0) at the origin.
    """
    if level != 0.5:
        raise ValueError("only the midpoint isosurface (level=0.5) is supported")
    grid = np.asarray(mask)
    if grid.ndim != 3:
        raise ValueError("mask must be a 3D array")
    if not grid.any():
        raise ValueError("empty mask")
    sx, sy, sz = (float(s) for s in spacing)
    m = np.pad(grid.astype(bool), 1)

    # cell patterns via shifted sums; only mixed cells produce geometry
    pat = np.zeros(tuple(n - 1 for n in m.shape), dtype=np.uint8)
    for c, (dz, dy, dx) in enumerate(_CORNER):
        sl = m[dz:dz + pat.shape[0], dy:dy + pat.shape[1], dx:dx + pat.shape[2]]
        pat |= (sl << c).astype(np.uint8)
    mixed = np.argwhere((pat != 0) & (pat != 255))

    verts = {}
    coords = []
    tris = []
    scale = (sx, sy, sz)

    def cut_vertex(axis, i, j, k):
        key = (axis, i, j, k)
        v = verts.get(key)
        if v is None:
            zyx = [float(i - 1), float(j - 1), float(k - 1)]
            zyx[axis] += 0.5
            v = len(coords)
            verts[key] = v
            coords.append((zyx[2] * sx, zyx[1] * sy, zyx[0] * sz))
        return v

    for i, j, k in mixed:
        for loop in _TABLE[pat[i, j, k]]:
            ids = []
            for e in loop:
                bz, by, bx = _EDGE_BASE[e]
                ids.append(cut_vertex(_EDGE_AXIS[e], i + bz, j + by, k + bx))
            n = len(ids)
            if n == 3:
                tris.append(tuple(ids))
                continue
            pts = np.array([coords[v] for v in ids])
            centroid = pts.mean(axis=0)
            rolled = np.roll(pts, -1, axis=0)
            normal = np.cross(pts, rolled).sum(axis=0)
            norm = float(np.linalg.norm(normal))
            if norm > 0.0:
                perimeter = float(np.linalg.norm(rolled - pts, axis=1).sum())
                centroid = centroid + APEX_LIFT * perimeter * (normal / norm)
            apex = len(coords)
            coords.append(tuple(centroid))
            for a in range(n):
                tris.append((apex, ids[a], ids[(a + 1) % n]))

    return TriangleMesh(np.array(coords, dtype=np.float64),
                        np.array(tris, dtype=np.int64))


def is_watertight(mesh):
    """True if every directed edge occurs exactly once and is matched by
    its reverse, i.e. the mesh is closed and consistently oriented."""
    seen = set()
    for a, b, c in mesh.faces:
        for e in ((a, b), (b, c), (c, a)):
            if e in seen:
                return False
            seen.add(e)
    return all((b, a) in seen for a, b in seen)


def mesh_volume(mesh):
    """Enclosed volume in mm^3 from the divergence theorem."""
    if not is_watertight(mesh):
        raise ValueError("open mesh")
    a = mesh.vertices[mesh.faces[:, 0]]
    b = mesh.vertices[mesh.faces[:, 1]]
    c = mesh.vertices[mesh.faces[:, 2]]
    vol = np.einsum("ij,ij->i", a, np.cross(b, c)).sum() / 6.0
    return float(abs(vol))


def mesh_area(mesh):
    """Total surface area in mm^2."""
    a = mesh.vertices[mesh.faces[:, 0]]
    b = mesh.vertices[mesh.faces[:, 1]]
    c = mesh.vertices[mesh.faces[:, 2]]
    return float(0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1).sum())


def save_obj(mesh, path):
    """Write the mesh as Wavefront OBJ (1-based indices)."""
    with open(path, "w", encoding="ascii") as fh:
        for x, y, z in mesh.vertices.tolist():
            fh.write(f"v {x!r} {y!r} {z!r}\n")
        for a, b, c in mesh.faces.tolist():
            fh.write(f"f {a + 1} {b + 1} {c + 1}\n")
