"""Locally adaptive MIRE and the full ADMIRE chain."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .dct_denoise import DenoiseParams, dct_denoise_aniso
from .histogram import as_gray_image
from .mire import MireParams, auto_s, cross_differences, mire_fixed_s


@dataclass(frozen=True)
class AdmireParams:
    mire: MireParams = field(default_factory=MireParams)
    patch_size: int = 8
    stride: int = 4
    denoise: Optional[DenoiseParams] = None
    denoise_enabled: bool = True

    def __post_init__(self):
        if self.patch_size < 2:
            raise ValueError("patch_size must be >= 2")
        if not 1 <= self.stride <= self.patch_size:
            raise ValueError("stride must lie in [1, patch_size]")
        if self.denoise_enabled and self.denoise is None:
            raise ValueError("denoising enabled but no thresholds given")


def patch_origins(size: int, patch: int, stride: int) -> np.ndarray:
    """Patch start positions along one axis; the last patch is flush with the edge."""
    origins = list(range(0, size - patch + 1, stride))
    if origins[-1] != size - patch:
        origins.append(size - patch)
    return np.asarray(origins)


@dataclass
class PatchGrid:
    """Origins of overlapping square patches plus the aggregation buffers."""

    shape: tuple
    patch_size: int
    stride: int

    def __post_init__(self):
        H, W = self.shape
        self.rows = patch_origins(H, self.patch_size, self.stride)
        self.cols = patch_origins(W, self.patch_size, self.stride)
        self.accum = np.zeros(self.shape, dtype=np.int64)
        self.weight = np.zeros(self.shape, dtype=np.int64)

    def add(self, r: int, c: int, values) -> None:
        p = self.patch_size
        self.accum[r:r + p, c:c + p] += values
        self.weight[r:r + p, c:c + p] += 1

    def result(self) -> np.ndarray:
        if np.any(self.weight == 0):
            raise RuntimeError("uncovered pixels in patch grid")
        # integer half-up rounding of accum / weight
        out = (2 * self.accum + self.weight) // (2 * self.weight)
        return np.clip(out, 0, 255).astype(np.uint8)


def patch_scores(candidate: np.ndarray, grid: PatchGrid) -> np.ndarray:
    """Line TV of every grid patch of ``candidate``, shape ``(rows, cols)``.

    Only differences between columns inside the patch are counted.
    """
    p = grid.patch_size
    d = cross_differences(candidate)  # (H, W-1)
    integral = np.zeros((d.shape[0] + 1, d.shape[1] + 1), dtype=np.int64)
    integral[1:, 1:] = d.cumsum(0).cumsum(1)
    r0 = grid.rows[:, None]
    c0 = grid.cols[None, :]
    r1, c1 = r0 + p, c0 + p - 1
    return integral[r1, c1] - integral[r0, c1] - integral[r1, c0] + integral[r0, c0]


def _adaptive_columns(img: np.ndarray, params: AdmireParams):
    s_values = params.mire.scan_values()
    p = params.patch_size
    if img.shape[0] < p or img.shape[1] < p:
        s_star, out = auto_s(img, replace(params.mire, orientation="columns"))
        return out, np.full((1, 1), s_star)

    grid = PatchGrid(img.shape, p, params.stride)
    candidates = [mire_fixed_s(img, float(s)) for s in s_values]
    scores = np.stack([patch_scores(c, grid) for c in candidates])
    # argmin returns the first minimum, i.e. the smallest s on ties
    best = np.argmin(scores, axis=0)
    for a, r in enumerate(grid.rows):
        for b, c in enumerate(grid.cols):
            grid.add(r, c, candidates[best[a, b]][r:r + p, c:c + p])
    return grid.result(), s_values[best]


def adaptive_mire(img, params: AdmireParams, return_selection: bool = False):
    """Per-patch choice of the MIRE parameter s, aggregated over patches.

    Every candidate ``mire_fixed_s(img, s)`` for s in the scan set is cut
    into ``patch_size`` patches at ``stride``; each patch keeps the
    candidate with the smallest in-patch line TV, and overlapping patches
    are averaged. Images smaller than one patch fall back to the global
    :func:`auto_s`.

    With ``return_selection=True`` also returns the chosen s per patch
    origin, as a 2-D array (in the image's own orientation).
    """
    img = as_gray_image(img)
    if params.mire.orientation == "rows":
        out, sel = _adaptive_columns(img.T, params)
        out, sel = out.T.copy(), sel.T.copy()
    else:
        out, sel = _adaptive_columns(img, params)
    if return_selection:
        return out, sel
    return out


def admire_pipeline(img, params: AdmireParams, return_selection: bool = False):
    """Adaptive MIRE followed, if enabled, by anisotropic DCT denoising.

    The denoiser runs with the MIRE orientation.
    """
    out, sel = adaptive_mire(img, params, return_selection=True)
    if params.denoise_enabled:
        dparams = replace(params.denoise, orientation=params.mire.orientation)
        out = dct_denoise_aniso(out, dparams)
    if return_selection:
        return out, sel
    return out
