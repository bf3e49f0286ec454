"""Voxel interpolation and gray-level discretization.

Two discretization conventions are first-class: OneBased levels start at 1
(the benchmark convention) and ZeroBased starts at 0, which reproduces the
level shift some programs apply. ZeroBased output always equals OneBased
output minus 1 at every voxel.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .volume import GrayVolume, RoiMask, VolumeError, roi_values

ONE_BASED = "one-based"
ZERO_BASED = "zero-based"


@dataclass(frozen=True)
class DiscretizationSpec:
    method: str  # "fbn" | "fbs"
    n_bins: int | None = None
    bin_width: float | None = None
    shift_mode: str = ONE_BASED

    def __post_init__(self):
        if self.method not in ("fbn", "fbs"):
            raise ValueError(f"unknown discretization method {self.method!r}")
        if self.method == "fbn":
            if self.n_bins is None or self.bin_width is not None:
                raise ValueError("fbn requires n_bins and no bin_width")
            if self.n_bins < 1:
                raise ValueError("n_bins must be >= 1")
        else:
            if self.bin_width is None or self.n_bins is not None:
                raise ValueError("fbs requires bin_width and no n_bins")
            if self.bin_width <= 0:
                raise ValueError("bin_width must be > 0")
        if self.shift_mode not in (ONE_BASED, ZERO_BASED):
            raise ValueError(f"unknown shift mode {self.shift_mode!r}")

    @property
    def one_based(self) -> bool:
        return self.shift_mode == ONE_BASED

    def describe(self) -> str:
        if self.method == "fbn":
            return f"fbn:{self.n_bins}/{self.shift_mode}"
        return f"fbs:{self.bin_width:g}/{self.shift_mode}"


@dataclass(frozen=True)
class DiscreteVolume:
    """Integer-leveled volume; levels are valid inside the ROI only."""
    dims: tuple[int, int, int]
    spacing: tuple[float, float, float]
    levels: np.ndarray  # (nz, ny, nx) int64; outside-ROI entries are 0
    mask: RoiMask
    level_range: tuple[int, int]
    spec: DiscretizationSpec

    def __post_init__(self):
        lv = np.asarray(self.levels, dtype=np.int64).reshape(
            self.dims[2], self.dims[1], self.dims[0]).copy()
        lv[~self.mask.flags] = 0
        lv.setflags(write=False)
        object.__setattr__(self, "levels", lv)
        lo, hi = self.level_range
        base = 1 if self.spec.one_based else 0
        if lo < base:
            raise ValueError("level below shift-mode floor")
        if self.spec.method == "fbn":
            cap = self.spec.n_bins if self.spec.one_based else self.spec.n_bins - 1
            if hi > cap:
                raise ValueError("level above n_bins cap")

    def roi_levels(self) -> np.ndarray:
        """ROI levels in x-fastest order."""
        return self.levels[self.mask.flags]

    def level_axis(self) -> np.ndarray:
        """Dense level axis from the shift-mode floor to the max level."""
        base = 1 if self.spec.one_based else 0
        return np.arange(base, self.level_range[1] + 1, dtype=np.int64)


@dataclass(frozen=True)
class InterpolationSpec:
    target_spacing: tuple[float, float, float]
    kernel: str = "trilinear"  # "nearest" | "trilinear"

    def __post_init__(self):
        if min(self.target_spacing) <= 0:
            raise ValueError("target spacing must be strictly positive")
        if self.kernel not in ("nearest", "trilinear"):
            raise ValueError(f"unknown kernel {self.kernel!r}")


def _sample_positions(n_old: int, s_old: float, n_new: int, s_new: float) -> np.ndarray:
    """Fractional source indices of the output voxel centers, grids aligned
    on their physical centers; voxel i has its center at (i + 0.5) * s."""
    offset = (n_old * s_old - n_new * s_new) / 2.0
    centers = offset + (np.arange(n_new) + 0.5) * s_new
    return centers / s_old - 0.5


def _resample(values: np.ndarray, dims_old, spacing_old, dims_new, spacing_new,
              kernel: str) -> np.ndarray:
    fx = _sample_positions(dims_old[0], spacing_old[0], dims_new[0], spacing_new[0])
    fy = _sample_positions(dims_old[1], spacing_old[1], dims_new[1], spacing_new[1])
    fz = _sample_positions(dims_old[2], spacing_old[2], dims_new[2], spacing_new[2])
    if kernel == "nearest":
        ix = np.clip(np.floor(fx + 0.5).astype(int), 0, dims_old[0] - 1)
        iy = np.clip(np.floor(fy + 0.5).astype(int), 0, dims_old[1] - 1)
        iz = np.clip(np.floor(fz + 0.5).astype(int), 0, dims_old[2] - 1)
        return values[np.ix_(iz, iy, ix)]
    out = np.zeros((dims_new[2], dims_new[1], dims_new[0]))
    lo = [np.clip(np.floor(f).astype(int), 0, d - 1)
          for f, d in zip((fz, fy, fx), (dims_old[2], dims_old[1], dims_old[0]))]
    hi = [np.minimum(l + 1, d - 1)
          for l, d in zip(lo, (dims_old[2], dims_old[1], dims_old[0]))]
    t = [np.clip(f - l, 0.0, 1.0) for f, l in zip((fz, fy, fx), lo)]
    for cz, wz in ((lo[0], 1 - t[0]), (hi[0], t[0])):
        for cy, wy in ((lo[1], 1 - t[1]), (hi[1], t[1])):
            for cx, wx in ((lo[2], 1 - t[2]), (hi[2], t[2])):
                w = wz[:, None, None] * wy[None, :, None] * wx[None, None, :]
                out += w * values[np.ix_(cz, cy, cx)]
    return out


def interpolate(volume: GrayVolume, mask: RoiMask,
                spec: InterpolationSpec) -> tuple[GrayVolume, RoiMask]:
    """Resample volume and mask onto a grid with the target spacing.

    Output dims are ceil(n*s_old/s_new) per axis; the output grid is aligned
    on the physical center of the input grid. The mask is resampled with
    nearest neighbor and thresholded at 0.5. Identical target spacing is an
    exact identity.
    """
    if spec.target_spacing == tuple(volume.spacing):
        return volume, mask
    dims_new = tuple(
        int(np.ceil(n * s_old / s_new))
        for n, s_old, s_new in zip(volume.dims, volume.spacing, spec.target_spacing))
    if min(dims_new) < 1:
        raise VolumeError("degenerate output grid")
    vals = _resample(volume.values, volume.dims, volume.spacing,
                     dims_new, spec.target_spacing, spec.kernel)
    flags = _resample(mask.flags.astype(np.float64), volume.dims, volume.spacing,
                      dims_new, spec.target_spacing, "nearest") > 0.5
    out_vol = GrayVolume(dims_new, spec.target_spacing, vals.reshape(-1))
    return out_vol, RoiMask(dims_new, flags.reshape(-1))


def _finish(volume, mask, levels_roi, spec) -> DiscreteVolume:
    grid = np.zeros_like(volume.values, dtype=np.int64)
    grid[mask.flags] = levels_roi
    return DiscreteVolume(
        dims=volume.dims, spacing=volume.spacing, levels=grid.reshape(-1),
        mask=mask, level_range=(int(levels_roi.min()), int(levels_roi.max())),
        spec=spec)


def discretize_fbn(volume: GrayVolume, mask: RoiMask, n_bins: int,
                   shift_mode: str = ONE_BASED) -> DiscreteVolume:
    """Fixed bin number: floor(N_g*(x - min)/(max - min)) + 1, with the ROI
    maximum mapping to N_g; min/max are taken over ROI voxels only."""
    spec = DiscretizationSpec("fbn", n_bins=n_bins, shift_mode=shift_mode)
    x = roi_values(volume, mask)
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        warnings.warn("zero intensity range; all levels set to the floor level",
                      RuntimeWarning, stacklevel=2)
        lev = np.ones(x.shape, dtype=np.int64)
    else:
        lev = np.floor(n_bins * (x - lo) / (hi - lo)).astype(np.int64) + 1
        lev[x == hi] = n_bins
        np.minimum(lev, n_bins, out=lev)  # float-rounding guard
    if shift_mode == ZERO_BASED:
        lev -= 1
    return _finish(volume, mask, lev, spec)


def discretize_fbs(volume: GrayVolume, mask: RoiMask, bin_width: float,
                   shift_mode: str = ONE_BASED) -> DiscreteVolume:
    """Fixed bin size: floor((x - min)/w_b) + 1 with ROI-wide min."""
    spec = DiscretizationSpec("fbs", bin_width=bin_width, shift_mode=shift_mode)
    x = roi_values(volume, mask)
    lo = float(x.min())
    lev = np.floor((x - lo) / bin_width).astype(np.int64) + 1
    if shift_mode == ZERO_BASED:
        lev -= 1
    return _finish(volume, mask, lev, spec)


def discretize(volume: GrayVolume, mask: RoiMask,
               spec: DiscretizationSpec) -> DiscreteVolume:
    if spec.method == "fbn":
        return discretize_fbn(volume, mask, spec.n_bins, spec.shift_mode)
    return discretize_fbs(volume, mask, spec.bin_width, spec.shift_mode)
