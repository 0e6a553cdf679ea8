"""Cumulative histograms, pseudo-inverses, midway histograms and specification.

All histograms live on the 8-bit grid {0, ..., 255} and are normalized by the
number of samples, so histograms of equally sized columns compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

LEVELS = 256

# absorbs float noise in weighted sums so x.5 always rounds up
_HALF_UP_EPS = 1e-9


def round_half_up(x):
    """Round to the nearest integer, halves going up, as int64."""
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5 + _HALF_UP_EPS).astype(np.int64)


def as_gray_image(img) -> np.ndarray:
    """Validate and return ``img`` as a 2-D uint8 array (no copy if possible)."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D gray image, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty image")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer) and not np.all(arr == np.round(arr)):
            raise ValueError("gray levels must be integers")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("gray levels must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


@dataclass(frozen=True, eq=False)
class CumulativeHistogram:
    """Normalized cumulative histogram over the 256 gray levels.

    ``bins[l]`` is the fraction of samples with value <= l.
    """

    bins: np.ndarray
    sample_count: int

    @classmethod
    def from_values(cls, values) -> "CumulativeHistogram":
        values = np.asarray(values).ravel()
        if values.size == 0:
            raise ValueError("cannot build a histogram from zero samples")
        counts = np.bincount(values.astype(np.int64), minlength=LEVELS)
        if counts.size > LEVELS:
            raise ValueError("values exceed 255")
        bins = np.cumsum(counts) / values.size
        bins.flags.writeable = False
        return cls(bins=bins, sample_count=int(values.size))

    def inverse(self, l):
        """Shorthand for :func:`pseudo_inverse_eval`."""
        return pseudo_inverse_eval(self, l)

    def __eq__(self, other):
        if not isinstance(other, CumulativeHistogram):
            return NotImplemented
        return self.sample_count == other.sample_count and np.array_equal(self.bins, other.bins)


def column_cumhist(img, j: int) -> CumulativeHistogram:
    """Cumulative histogram of column ``j`` of ``img``."""
    img = as_gray_image(img)
    if not 0 <= j < img.shape[1]:
        raise IndexError(f"column {j} out of range for width {img.shape[1]}")
    return CumulativeHistogram.from_values(img[:, j])


def global_cumhist(img) -> CumulativeHistogram:
    """Cumulative histogram over every pixel of ``img``."""
    return CumulativeHistogram.from_values(as_gray_image(img))


def pseudo_inverse_eval(H: CumulativeHistogram, l):
    """Smallest level ``z`` with ``H(z) >= l``.

    At ``l == 0`` this returns the smallest occupied level rather than 0, so
    that the map stays driven by the data. Accepts scalars or arrays.
    """
    l_arr = np.asarray(l, dtype=np.float64)
    if np.any(l_arr < 0) or np.any(l_arr > 1) or np.any(np.isnan(l_arr)):
        raise ValueError("quantile must lie in [0, 1]")
    z = np.searchsorted(H.bins, l_arr, side="left")
    lowest = int(np.searchsorted(H.bins, 0.0, side="right"))
    z = np.where(l_arr == 0, lowest, z)
    # l == 1 can miss bins[255] == 1.0 only through float error in bins
    z = np.minimum(z, LEVELS - 1)
    if z.ndim == 0:
        return int(z)
    return z.astype(np.int64)


def gaussian_weights(s: float) -> np.ndarray:
    """Truncated, normalized Gaussian window of half-width ``round(4 s)``.

    Returns ``2n + 1`` weights indexed ``-n..n``; ``s == 0`` gives ``[1.0]``.
    """
    if s < 0 or not np.isfinite(s):
        raise ValueError(f"standard deviation must be >= 0, got {s}")
    if s == 0:
        return np.ones(1)
    n = int(round_half_up(4 * s))
    k = np.arange(-n, n + 1, dtype=np.float64)
    w = np.exp(-(k**2) / (2 * s * s))
    w /= w.sum()
    return w


class MidwayInverse:
    """Weighted average of pseudo-inverses, rounded to the 8-bit grid."""

    def __init__(self, hists: Sequence[CumulativeHistogram], weights):
        weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 1 or len(hists) != weights.size:
            raise ValueError(
                f"got {len(hists)} histograms for {weights.size} weights"
            )
        if np.any(weights < 0):
            raise ValueError("weights must be non-negative")
        self.hists = tuple(hists)
        self.weights = weights

    def raw(self, l) -> np.ndarray:
        """Unrounded weighted average at quantile(s) ``l``."""
        l_arr = np.asarray(l, dtype=np.float64)
        acc = np.zeros(l_arr.shape)
        for w, H in zip(self.weights, self.hists):
            acc = acc + w * pseudo_inverse_eval(H, l_arr)
        return acc

    def __call__(self, l):
        out = np.clip(round_half_up(self.raw(l)), 0, LEVELS - 1)
        if out.ndim == 0:
            return int(out)
        return out


def midway_inverse(hists: Sequence[CumulativeHistogram], weights) -> MidwayInverse:
    """Build the midway pseudo-inverse of ``hists`` under ``weights``."""
    return MidwayInverse(hists, weights)


def specification_lut(H_own: CumulativeHistogram, target_inv) -> np.ndarray:
    """256-entry map ``v -> target_inv(H_own(v))``."""
    return np.asarray(target_inv(H_own.bins), dtype=np.int64)


def specify(column, H_own: CumulativeHistogram, target_inv) -> np.ndarray:
    """Remap ``column`` so its histogram becomes the one described by ``target_inv``.

    Parameters
    ----------
    column : array_like of uint8
        The samples ``H_own`` was computed from.
    H_own : CumulativeHistogram
        Cumulative histogram of ``column``.
    target_inv : callable
        Pseudo-inverse of the target histogram, e.g. a :class:`MidwayInverse`.

    Returns
    -------
    ndarray of uint8
        The remapped column, same shape as ``column``.
    """
    column = np.asarray(column)
    lut = specification_lut(H_own, target_inv)
    return lut[column].astype(np.uint8)


def cumhist_from_inverse(breaks: np.ndarray, values: np.ndarray) -> CumulativeHistogram:
    """Cumulative histogram of a step quantile function.

    The quantile function equals ``values[m]`` on ``(breaks[m-1], breaks[m]]``
    with ``breaks[-1] == 1``; ``values`` must be non-decreasing.
    """
    grid = np.arange(LEVELS)
    # H(z) = largest break whose step value is <= z
    idx = np.searchsorted(values, grid, side="right") - 1
    bins = np.where(idx >= 0, breaks[np.clip(idx, 0, None)], 0.0)
    return CumulativeHistogram(bins=bins, sample_count=0)


def midway_cumhist(
    hists: Sequence[CumulativeHistogram], weights, rounded: bool = True
) -> CumulativeHistogram:
    """Cumulative histogram whose pseudo-inverse is the weighted midway.

    Exact: every member pseudo-inverse is constant between consecutive
    values taken by the member histograms, so the midway is evaluated once
    per such interval. With ``rounded=False`` the averaged levels are kept
    real-valued, which is the continuous-level barycenter.
    """
    mid = midway_inverse(hists, weights)
    breaks = np.unique(np.concatenate([H.bins for H in hists]))
    breaks = breaks[breaks > 0]
    vals = mid(breaks) if rounded else mid.raw(breaks)
    return cumhist_from_inverse(breaks, np.asarray(vals, dtype=np.float64))
