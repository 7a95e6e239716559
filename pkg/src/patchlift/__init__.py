"""Exact fast patch distances (PatchLift) and separable non-local means."""
from .core import (
    NlmParams,
    ValidationError,
    as_image,
    as_signal,
    extend_symmetric,
    validate_params,
)
from .filters import nlm_1d_naive, nlm_1d_patchlift, nlm_2d_naive, snlm_2d, weight
from .kernel import (
    BandedKernel,
    compute_banded_kernel,
    kernel_distance_sq,
    lift_value,
    patch_distance_sq_naive,
)
from .metrics import MetricReport, add_awgn, mse, psnr, ssim
from .ops import OpCounter

__all__ = [
    "BandedKernel", "MetricReport", "NlmParams", "OpCounter", "ValidationError",
    "add_awgn", "as_image", "as_signal", "compute_banded_kernel", "extend_symmetric",
    "kernel_distance_sq", "lift_value", "mse", "nlm_1d_naive", "nlm_1d_patchlift",
    "nlm_2d_naive", "patch_distance_sq_naive", "psnr", "snlm_2d", "ssim", "validate_params",
    "weight",
]
