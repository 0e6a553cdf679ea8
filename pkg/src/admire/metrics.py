"""Image quality metrics: RMSE and its contrast-invariant variant."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .histogram import as_gray_image, global_cumhist, midway_inverse, specify
from .mire import tv_line


def _same_shape(u, v):
    u, v = as_gray_image(u), as_gray_image(v)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    return u, v


def rmse(u, v) -> float:
    u, v = _same_shape(u, v)
    diff = u.astype(np.float64) - v.astype(np.float64)
    return float(np.sqrt(np.mean(diff * diff)))


def midway_pair(u, v):
    """Specify ``u`` and ``v`` onto their common equal-weight midway histogram."""
    u, v = _same_shape(u, v)
    Hu, Hv = global_cumhist(u), global_cumhist(v)
    mid = midway_inverse([Hu, Hv], [0.5, 0.5])
    return specify(u, Hu, mid), specify(v, Hv, mid)


def rmse_ci(u, v) -> float:
    """RMSE after both images are brought onto their midway histogram.

    Zero whenever one image is a level-injective monotone contrast change
    of the other.
    """
    um, vm = midway_pair(u, v)
    return rmse(um, vm)


@dataclass(frozen=True)
class MetricReport:
    rmse: float
    rmse_ci: float
    tv_before: int
    tv_after: int


def evaluate(truth, test, orientation: str = "columns") -> MetricReport:
    """Compare ``test`` against ``truth``; TV scores are of truth, then test."""
    return MetricReport(
        rmse=rmse(truth, test),
        rmse_ci=rmse_ci(truth, test),
        tv_before=tv_line(truth, orientation),
        tv_after=tv_line(test, orientation),
    )
