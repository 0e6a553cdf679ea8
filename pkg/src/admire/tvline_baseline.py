"""Total-variation column-offset destriping, used as the comparison baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .histogram import as_gray_image, round_half_up
from .mire import check_orientation

DELTA_RANGE = np.arange(-255, 256)


@dataclass(frozen=True)
class OffsetVector:
    deltas: np.ndarray      # delta(j), j = 0..M-2
    offsets: np.ndarray     # k(j) before the mean shift, k(0) = 0
    mean_shift: int
    clipped: int            # pixels clamped at the end


def best_delta(left, right) -> int:
    """Integer delta minimizing ``sum |right + delta - left|`` by full scan.

    Ties go to the smallest ``|delta|``, then to the negative one.
    """
    d = np.asarray(left, dtype=np.int64) - np.asarray(right, dtype=np.int64)
    cost = np.abs(d[None, :] - DELTA_RANGE[:, None]).sum(axis=1)
    tied = DELTA_RANGE[cost == cost.min()]
    return int(min(tied, key=lambda x: (abs(x), x)))


def column_offsets(img) -> OffsetVector:
    """Offsets ``k(j)`` chaining the optimal neighbor deltas from column 0."""
    img = as_gray_image(img)
    N, M = img.shape
    if M < 2:
        return OffsetVector(np.zeros(0, np.int64), np.zeros(M, np.int64), 0, 0)
    deltas = np.array([best_delta(img[:, j], img[:, j + 1]) for j in range(M - 1)])
    offsets = np.concatenate([[0], np.cumsum(deltas)])
    # one integer constant brings the mean back; every column has N pixels
    shift = int(round_half_up(-offsets.mean()))
    out = img.astype(np.int64) + offsets[None, :] + shift
    clipped = int(np.count_nonzero((out < 0) | (out > 255)))
    return OffsetVector(deltas, offsets, shift, clipped)


def tv_baseline(img, orientation: str = "columns", return_offsets: bool = False):
    """Remove column stripes by adding one constant per column.

    Column ``j + 1`` is shifted by the integer minimizing the L1 distance to
    the already corrected column ``j``; a final global constant restores the
    input mean and values are clipped to [0, 255] only at the end.
    """
    img = as_gray_image(img)
    if check_orientation(orientation) == "rows":
        out, off = tv_baseline(img.T, return_offsets=True)
        out = out.T.copy()
        return (out, off) if return_offsets else out
    off = column_offsets(img)
    if img.shape[1] < 2:
        out = img.copy()
    else:
        out = img.astype(np.int64) + off.offsets[None, :] + off.mean_shift
        out = np.clip(out, 0, 255).astype(np.uint8)
    return (out, off) if return_offsets else out
