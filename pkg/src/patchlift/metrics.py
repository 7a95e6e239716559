"""Noise synthesis and fidelity metrics (MSE, PSNR, SSIM)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.ndimage import correlate1d

from .core import Image2D, ShapeError, ValidationError, as_image

PEAK = 255.0
SSIM_WIN = 11
SSIM_SIGMA = 1.5
SSIM_C1 = (0.01 * PEAK) ** 2
SSIM_C2 = (0.03 * PEAK) ** 2


def add_awgn(img: ArrayLike, sigma: float, seed: int) -> Image2D:
    """Add i.i.d. N(0, sigma^2) noise, drawn in row-major order from ``seed``.

    The result is not clipped.
    """
    img = as_image(img)
    if sigma < 0:
        raise ValidationError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return img.copy()
    rng = np.random.default_rng(seed)
    return img + sigma * rng.standard_normal(img.shape)


def _pair(a, b):
    a, b = as_image(a), as_image(b)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def mse(a: ArrayLike, b: ArrayLike) -> float:
    a, b = _pair(a, b)
    return float(np.mean((a - b) ** 2))


def psnr(a: ArrayLike, b: ArrayLike) -> float:
    """Peak signal-to-noise ratio in dB for peak 255; ``inf`` for identical images."""
    m = mse(a, b)
    if m == 0:
        return math.inf
    return 10.0 * math.log10(PEAK ** 2 / m)


def _gaussian_taps():
    x = np.arange(SSIM_WIN) - SSIM_WIN // 2
    g = np.exp(-(x ** 2) / (2 * SSIM_SIGMA ** 2))
    return g / g.sum()


def _window_mean(x, taps):
    r = SSIM_WIN // 2
    y = correlate1d(correlate1d(x, taps, axis=0), taps, axis=1)
    # keep only positions whose window lies fully inside the image
    return y[r:-r, r:-r]


def ssim(a: ArrayLike, b: ArrayLike) -> float:
    """Mean SSIM over fully-contained 11x11 Gaussian windows (sigma 1.5)."""
    a, b = _pair(a, b)
    if min(a.shape) < SSIM_WIN:
        raise ShapeError(f"images must be at least {SSIM_WIN}x{SSIM_WIN}, got {a.shape}")
    taps = _gaussian_taps()
    mu_a = _window_mean(a, taps)
    mu_b = _window_mean(b, taps)
    var_a = _window_mean(a * a, taps) - mu_a ** 2
    var_b = _window_mean(b * b, taps) - mu_b ** 2
    cov = _window_mean(a * b, taps) - mu_a * mu_b
    num = (2 * mu_a * mu_b + SSIM_C1) * (2 * cov + SSIM_C2)
    den = (mu_a ** 2 + mu_b ** 2 + SSIM_C1) * (var_a + var_b + SSIM_C2)
    return float(np.mean(num / den))


@dataclass(frozen=True)
class MetricReport:
    mse: float
    psnr_db: float
    ssim: float

    @classmethod
    def compare(cls, ref: ArrayLike, test: ArrayLike) -> "MetricReport":
        return cls(mse(ref, test), psnr(ref, test), ssim(ref, test))

    def __str__(self):
        return f"mse={_fmt(self.mse)} psnr_db={_fmt(self.psnr_db)} ssim={_fmt(self.ssim)}"


def _fmt(v: float) -> str:
    return "inf" if math.isinf(v) and v > 0 else f"{v:#.6g}"
