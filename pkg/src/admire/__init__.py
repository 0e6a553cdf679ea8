"""Single-image non-uniformity correction for infrared-style images.

Midway column equalization with a locally adaptive smoothing parameter,
anisotropic DCT denoising, a TV column-offset baseline, a nonlinear
non-uniformity simulator and contrast-invariant error metrics.
"""

from .adaptive import AdmireParams, PatchGrid, adaptive_mire, admire_pipeline
from .dct_denoise import DenoiseParams, dct2, dct_denoise_aniso, idct2, threshold_aniso
from .histogram import (
    CumulativeHistogram,
    column_cumhist,
    gaussian_weights,
    global_cumhist,
    midway_cumhist,
    midway_inverse,
    pseudo_inverse_eval,
    specify,
)
from .metrics import MetricReport, evaluate, rmse, rmse_ci
from .mire import MireParams, auto_s, mire_fixed_s, tv_line
from .pgm import PGMError, read_pgm, write_pgm
from .simulate import NuField, apply_nu, make_nu_field
from .tvline_baseline import OffsetVector, tv_baseline

__version__ = "0.1.0"
