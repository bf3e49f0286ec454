"""Immutable 3D volumes, ROI masks, file ingestion, and phantom checks.

Grids are stored x-fastest: voxel (x, y, z) lives at linear index
x + nx*y + nx*ny*z. Internally arrays are shaped (nz, ny, nx) so that a
C-order flatten reproduces exactly that order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

_DTYPES = {"f32": "<f4", "i32": "<i4"}


class VolumeError(ValueError):
    """Raised for malformed volume/mask input files."""


def _as_grid(values: np.ndarray, dims) -> np.ndarray:
    nx, ny, nz = dims
    return np.asarray(values).reshape(nz, ny, nx)


@dataclass(frozen=True)
class GrayVolume:
    """Scalar intensities on a regular 3D grid with physical spacing in mm."""
    dims: tuple[int, int, int]
    spacing: tuple[float, float, float]
    values: np.ndarray  # shape (nz, ny, nx), read-only

    def __post_init__(self):
        nx, ny, nz = self.dims
        if min(nx, ny, nz) <= 0:
            raise VolumeError("dims must be positive")
        if min(self.spacing) <= 0:
            raise VolumeError("spacing must be strictly positive")
        v = np.asarray(self.values, dtype=np.float64)
        if v.size != nx * ny * nz:
            raise VolumeError("payload length mismatch")
        if not np.all(np.isfinite(v)):
            raise VolumeError("non-finite voxel values")
        v = _as_grid(v, self.dims)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def value_at(self, x: int, y: int, z: int) -> float:
        return float(self.values[z, y, x])


@dataclass(frozen=True)
class RoiMask:
    """Binary region-of-interest flags on the same grid as a GrayVolume."""
    dims: tuple[int, int, int]
    flags: np.ndarray  # shape (nz, ny, nx) bool, read-only

    def __post_init__(self):
        f = _as_grid(np.asarray(self.flags) != 0, self.dims)
        if not f.any():
            raise VolumeError("empty mask")
        f.setflags(write=False)
        object.__setattr__(self, "flags", f)

    @property
    def voxel_count(self) -> int:
        return int(self.flags.sum())


@dataclass(frozen=True)
class PhantomCheckReport:
    whole_range: tuple[float, float]
    roi_range: tuple[float, float]
    roi_levels_present: frozenset[int]
    dims_ok: bool
    spacing_ok: bool
    whole_range_ok: bool
    roi_range_ok: bool
    absent_levels_ok: bool

    @property
    def all_ok(self) -> bool:
        return (self.dims_ok and self.spacing_ok and self.whole_range_ok
                and self.roi_range_ok and self.absent_levels_ok)


def _read_json_raw(path: Path) -> tuple[tuple, tuple, np.ndarray]:
    try:
        header = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise VolumeError(f"malformed header: {e}") from e
    for key in ("dims", "spacing_mm", "dtype", "data"):
        if key not in header:
            raise VolumeError(f"malformed header: missing {key!r}")
    dims = tuple(int(d) for d in header["dims"])
    spacing = tuple(float(s) for s in header["spacing_mm"])
    if len(dims) != 3 or len(spacing) != 3:
        raise VolumeError("malformed header: dims/spacing_mm must have 3 entries")
    dt = _DTYPES.get(header["dtype"])
    if dt is None:
        raise VolumeError(f"malformed header: unknown dtype {header['dtype']!r}")
    raw_path = path.parent / header["data"]
    data = np.fromfile(raw_path, dtype=dt)
    if data.size != dims[0] * dims[1] * dims[2]:
        raise VolumeError("payload length mismatch")
    return dims, spacing, data.astype(np.float64)


def _read_csv_slices(path: Path) -> tuple[tuple, tuple, np.ndarray]:
    """Plain-text desk format: z-slices separated by blank lines, rows are y,
    comma-separated x values. Spacing defaults to 1 mm (no header line)."""
    text = path.read_text()
    slices = []
    current: list[list[float]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            if current:
                slices.append(current)
                current = []
            continue
        try:
            current.append([float(t) for t in line.split(",")])
        except ValueError as e:
            raise VolumeError(f"malformed header: {e}") from e
    if current:
        slices.append(current)
    if not slices:
        raise VolumeError("malformed header: no slices")
    ny = len(slices[0])
    nx = len(slices[0][0])
    for s in slices:
        if len(s) != ny or any(len(r) != nx for r in s):
            raise VolumeError("payload length mismatch")
    arr = np.array(slices, dtype=np.float64)  # (nz, ny, nx)
    return (nx, ny, len(slices)), (1.0, 1.0, 1.0), arr.reshape(-1)


def _infer_format(path: Path) -> str:
    return "csv-slices" if path.suffix.lower() == ".csv" else "json+raw"


def load_volume(path, format: str | None = "json+raw") -> GrayVolume:
    """Load a GrayVolume from `json+raw` or `csv-slices` files.

    `format=None` infers from the file extension (.csv -> csv-slices).
    """
    path = Path(path)
    if not path.exists():
        raise VolumeError(f"no such file: {path}")
    if format is None:
        format = _infer_format(path)
    if format == "json+raw":
        dims, spacing, data = _read_json_raw(path)
    elif format == "csv-slices":
        dims, spacing, data = _read_csv_slices(path)
    else:
        raise VolumeError(f"unknown format {format!r}")
    return GrayVolume(dims, spacing, data)


def load_mask(path, volume: GrayVolume, format: str | None = "json+raw") -> RoiMask:
    """Load a RoiMask for `volume`; nonzero values coerce to 1."""
    path = Path(path)
    if not path.exists():
        raise VolumeError(f"no such file: {path}")
    if format is None:
        format = _infer_format(path)
    if format == "json+raw":
        dims, _spacing, data = _read_json_raw(path)
    elif format == "csv-slices":
        dims, _spacing, data = _read_csv_slices(path)
    else:
        raise VolumeError(f"unknown format {format!r}")
    if dims != volume.dims:
        raise VolumeError("dims mismatch between mask and volume")
    return RoiMask(dims, data != 0)


def save_volume(volume: GrayVolume, path, dtype: str = "f32") -> None:
    """Write the json header and little-endian raw payload next to it."""
    path = Path(path)
    if dtype not in _DTYPES:
        raise VolumeError(f"unknown dtype {dtype!r}")
    raw_name = path.stem + ".raw"
    header = {
        "dims": list(volume.dims),
        "spacing_mm": list(volume.spacing),
        "dtype": dtype,
        "data": raw_name,
    }
    path.write_text(json.dumps(header, indent=2) + "\n")
    volume.values.astype(_DTYPES[dtype]).tofile(path.parent / raw_name)


def save_mask(mask: RoiMask, path, spacing=(1.0, 1.0, 1.0)) -> None:
    path = Path(path)
    raw_name = path.stem + ".raw"
    header = {
        "dims": list(mask.dims),
        "spacing_mm": list(spacing),
        "dtype": "i32",
        "data": raw_name,
    }
    path.write_text(json.dumps(header, indent=2) + "\n")
    mask.flags.astype("<i4").tofile(path.parent / raw_name)


def roi_values(volume: GrayVolume, mask: RoiMask) -> np.ndarray:
    """Intensities of ROI voxels in x-fastest order."""
    if mask.dims != volume.dims:
        raise VolumeError("dims mismatch between mask and volume")
    return volume.values[mask.flags]


def check_phantom(volume: GrayVolume, mask: RoiMask) -> PhantomCheckReport:
    """Validate the reference-phantom contract: 5x4x4 grid of 2 mm voxels,
    grey levels 1..9 overall and 1..6 in the ROI with levels 2 and 5 absent."""
    whole = volume.values
    roi = roi_values(volume, mask)
    whole_range = (float(whole.min()), float(whole.max()))
    roi_range = (float(roi.min()), float(roi.max()))
    levels = frozenset(int(v) for v in np.unique(roi))
    return PhantomCheckReport(
        whole_range=whole_range,
        roi_range=roi_range,
        roi_levels_present=levels,
        dims_ok=volume.dims == (5, 4, 4),
        spacing_ok=volume.spacing == (2.0, 2.0, 2.0),
        whole_range_ok=1 <= whole_range[0] and whole_range[1] <= 9,
        roi_range_ok=1 <= roi_range[0] and roi_range[1] <= 6,
        absent_levels_ok=not ({2, 5} & levels),
    )
