"""Anisotropic hard-threshold DCT denoising on sliding overlapping patches."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .histogram import as_gray_image, round_half_up
from .mire import check_orientation


@dataclass(frozen=True)
class DenoiseParams:
    """Thresholds for :func:`dct_denoise_aniso`.

    ``T_j`` applies to the coefficients that vary only across the pattern
    (pure horizontal frequencies for column stripes), ``T_i`` to every other
    non-DC coefficient. Both are in orthonormal-DCT units, i.e. gray levels.
    """

    T_i: float
    T_j: float
    patch_size: int = 8
    orientation: str = "columns"

    def __post_init__(self):
        if self.T_i < 0 or self.T_j < 0:
            raise ValueError("thresholds must be >= 0")
        if self.patch_size < 1:
            raise ValueError("patch_size must be >= 1")
        check_orientation(self.orientation)


@lru_cache(maxsize=8)
def dct_matrix(n: int) -> np.ndarray:
    """Orthonormal DCT-II matrix ``C`` with ``X = C @ x``."""
    k = np.arange(n)[:, None]
    x = np.arange(n)[None, :]
    C = np.cos(np.pi * (2 * x + 1) * k / (2 * n))
    C[0] *= np.sqrt(1.0 / n)
    C[1:] *= np.sqrt(2.0 / n)
    C.flags.writeable = False
    return C


def dct2(patch) -> np.ndarray:
    """2-D orthonormal DCT-II of a square patch (or a stack of them)."""
    patch = np.asarray(patch, dtype=np.float64)
    if patch.ndim < 2 or patch.shape[-1] != patch.shape[-2]:
        raise ValueError(f"expected square patches, got shape {patch.shape}")
    C = dct_matrix(patch.shape[-1])
    return C @ patch @ C.T


def idct2(coeffs) -> np.ndarray:
    """Inverse of :func:`dct2`."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.ndim < 2 or coeffs.shape[-1] != coeffs.shape[-2]:
        raise ValueError(f"expected square coefficients, got shape {coeffs.shape}")
    C = dct_matrix(coeffs.shape[-1])
    return C.T @ coeffs @ C


def threshold_map(params: DenoiseParams) -> np.ndarray:
    """Per-coefficient thresholds for a ``patch_size`` square patch."""
    p = params.patch_size
    T = np.full((p, p), float(params.T_i))
    if params.orientation == "columns":
        T[0, 1:] = params.T_j
    else:
        T[1:, 0] = params.T_j
    T[0, 0] = 0.0
    return T


def threshold_aniso(coeffs, params: DenoiseParams) -> np.ndarray:
    """Zero every coefficient whose magnitude is strictly below its threshold.

    The DC coefficient is never touched.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    T = threshold_map(params)
    if coeffs.shape[-2:] != T.shape:
        raise ValueError(f"coefficient shape {coeffs.shape} does not match patch_size")
    return np.where(np.abs(coeffs) < T, 0.0, coeffs)


def denoise_patch(patch, params: DenoiseParams) -> np.ndarray:
    return idct2(threshold_aniso(dct2(patch), params))


def _accumulate(img: np.ndarray, params: DenoiseParams, chunk_rows: int = 64):
    p = params.patch_size
    H, W = img.shape
    windows = sliding_window_view(img.astype(np.float64), (p, p))
    accum = np.zeros((H, W))
    weight = np.zeros((H, W), dtype=np.int64)
    oh, ow = windows.shape[:2]
    for r0 in range(0, oh, chunk_rows):
        block = windows[r0:r0 + chunk_rows]
        rec = denoise_patch(block, params)
        rh = rec.shape[0]
        for di in range(p):
            for dj in range(p):
                accum[r0 + di:r0 + di + rh, dj:dj + ow] += rec[:, :, di, dj]
                weight[r0 + di:r0 + di + rh, dj:dj + ow] += 1
    return accum, weight


def dct_denoise_aniso(img, params: DenoiseParams) -> np.ndarray:
    """Denoise ``img`` by thresholding the DCT of every patch at stride 1.

    Each pixel is the plain average of its reconstructions over all patches
    covering it, then rounded half-up and clipped to [0, 255]. Images smaller
    than one patch are returned unchanged with a :class:`RuntimeWarning`.
    """
    img = as_gray_image(img)
    p = params.patch_size
    if img.shape[0] < p or img.shape[1] < p:
        warnings.warn(
            f"image {img.shape} smaller than patch {p}; denoising skipped",
            RuntimeWarning,
            stacklevel=2,
        )
        return img.copy()
    if params.orientation == "rows":
        # transpose so both orientations share one float evaluation order
        out = dct_denoise_aniso(img.T, replace(params, orientation="columns"))
        return out.T.copy()
    accum, weight = _accumulate(img, params)
    return np.clip(round_half_up(accum / weight), 0, 255).astype(np.uint8)
