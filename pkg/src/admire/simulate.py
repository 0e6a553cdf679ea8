"""Seeded nonlinear per-column non-uniformity simulator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .histogram import as_gray_image, round_half_up

_X = np.arange(256, dtype=np.float64)
# parabola vanishing at 0 and 255 with unit peak at mid-range
_BUMP = 4.0 * _X * (255.0 - _X) / 255.0**2


@dataclass(frozen=True, eq=False)
class NuField:
    """Per-column transfer functions, one 256-entry monotone table each."""

    transfer: np.ndarray  # (M, 256) uint8
    seed: int
    gain_range: tuple
    offset_range: tuple
    curvature_range: tuple

    @property
    def width(self) -> int:
        return self.transfer.shape[0]


def make_nu_field(M: int, seed: int, alpha: float, beta: float, gamma: float) -> NuField:
    """Draw a random field of gain, offset and curvature per column.

    Column ``j`` maps ``x`` to ``a_j x + b_j + c_j bump(x)``, rounded and
    clipped, where ``bump`` is a parabola equal to 0 at both ends of the
    range and 1 at mid-range. So ``beta`` and ``gamma`` are in gray levels
    and ``alpha`` is a relative gain spread.
    """
    if M < 1:
        raise ValueError("need at least one column")
    if min(alpha, beta, gamma) < 0:
        raise ValueError("alpha, beta and gamma must be >= 0")
    rng = np.random.default_rng(seed)
    a = rng.uniform(1 - alpha, 1 + alpha, M)
    b = rng.uniform(-beta, beta, M)
    c = rng.uniform(-gamma, gamma, M)
    raw = a[:, None] * _X[None, :] + b[:, None] + c[:, None] * _BUMP[None, :]
    table = np.clip(round_half_up(raw), 0, 255)
    table = np.maximum.accumulate(table, axis=1)
    if np.any(table[:, 0] == table[:, -1]):
        raise ValueError("parameters produce a constant transfer function")
    return NuField(
        transfer=table.astype(np.uint8),
        seed=seed,
        gain_range=(1 - alpha, 1 + alpha),
        offset_range=(-beta, beta),
        curvature_range=(-gamma, gamma),
    )


def apply_nu(img, field: NuField, noise_sigma: float = 0.0, seed=None) -> np.ndarray:
    """Corrupt ``img``: add Gaussian noise, clip, round, then apply each column's table."""
    img = as_gray_image(img)
    if img.shape[1] != field.width:
        raise ValueError(f"field has {field.width} columns, image has {img.shape[1]}")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be >= 0")
    x = img
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        noisy = img + rng.normal(0.0, noise_sigma, img.shape)
        x = np.clip(round_half_up(noisy), 0, 255)
    cols = np.arange(img.shape[1])[None, :]
    return field.transfer[cols, x]
