from pathlib import Path

import numpy as np
import pytest

from radquant.preprocess import (ONE_BASED, ZERO_BASED, DiscretizationSpec,
                                 DiscreteVolume)
from radquant.volume import GrayVolume, RoiMask, load_mask, load_volume

DATA = Path(__file__).resolve().parent.parent / "data"


def make_volume(values_zyx, spacing=(1.0, 1.0, 1.0)) -> GrayVolume:
    arr = np.asarray(values_zyx, dtype=np.float64)
    nz, ny, nx = arr.shape
    return GrayVolume((nx, ny, nz), spacing, arr)


def make_mask(flags_zyx) -> RoiMask:
    arr = np.asarray(flags_zyx)
    nz, ny, nx = arr.shape
    return RoiMask((nx, ny, nz), arr != 0)


def make_discrete(levels_zyx, roi_zyx=None, one_based=True,
                  spacing=(1.0, 1.0, 1.0)) -> DiscreteVolume:
    """Wrap an integer level grid as a DiscreteVolume (fbs width 1)."""
    levels = np.asarray(levels_zyx, dtype=np.int64)
    if roi_zyx is None:
        roi_zyx = levels > 0 if one_based else np.ones_like(levels, bool)
    mask = make_mask(roi_zyx)
    spec = DiscretizationSpec(
        "fbs", bin_width=1.0,
        shift_mode=ONE_BASED if one_based else ZERO_BASED)
    inside = levels[mask.flags]
    return DiscreteVolume(mask.dims, spacing, levels, mask,
                          (int(inside.min()), int(inside.max())), spec)


@pytest.fixture(scope="session")
def phantom():
    volume = load_volume(DATA / "phantom" / "image.json")
    mask = load_mask(DATA / "phantom" / "mask.json", volume)
    return volume, mask
