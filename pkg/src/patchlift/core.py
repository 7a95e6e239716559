"""Shared domain types, parameter validation and boundary extension.

Signals and images are plain float64 numpy arrays (1-D and 2-D, row-major).
``as_signal`` / ``as_image`` are the gatekeepers that enforce their
invariants; everything downstream assumes validated input.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

Signal1D = NDArray[np.float64]
Image2D = NDArray[np.float64]


class ValidationError(ValueError):
    """Base class for rejected inputs or parameters."""


class EmptySignalError(ValidationError):
    pass


class NonFiniteError(ValidationError):
    pass


class ShapeError(ValidationError):
    pass


class NegativeSearchRadiusError(ValidationError):
    pass


class NegativePatchRadiusError(ValidationError):
    pass


class NonPositiveSmoothingError(ValidationError):
    pass


class PatchRadiusTooLargeError(ValidationError):
    pass


class InsufficientSignalError(ValidationError):
    pass


def as_signal(samples: ArrayLike) -> Signal1D:
    """Convert ``samples`` to a validated 1-D float64 array."""
    f = np.asarray(samples, dtype=np.float64)
    if f.ndim != 1:
        raise ShapeError(f"signal must be one-dimensional, got shape {f.shape}")
    if f.size == 0:
        raise EmptySignalError("signal must contain at least one sample")
    if not np.all(np.isfinite(f)):
        raise NonFiniteError("signal contains NaN or Inf")
    return f


def as_image(data: ArrayLike) -> Image2D:
    """Convert ``data`` to a validated 2-D float64 array."""
    img = np.asarray(data, dtype=np.float64)
    if img.ndim != 2:
        raise ShapeError(f"image must be two-dimensional, got shape {img.shape}")
    if img.size == 0:
        raise EmptySignalError("image must have at least one row and one column")
    if not np.all(np.isfinite(img)):
        raise NonFiniteError("image contains NaN or Inf")
    return img


@dataclass(frozen=True)
class NlmParams:
    """Search radius ``S``, patch radius ``K`` and smoothing parameter ``h``.

    The search window spans ``2S+1`` samples and the patch ``2K+1``.
    Construction checks only the sign constraints; the length-dependent
    check lives in :func:`validate_params`.
    """

    search_radius: int
    patch_radius: int
    h: float

    def __post_init__(self):
        if self.search_radius < 0:
            raise NegativeSearchRadiusError(
                f"search radius must be >= 0, got {self.search_radius}")
        if self.patch_radius < 0:
            raise NegativePatchRadiusError(
                f"patch radius must be >= 0, got {self.patch_radius}")
        if not (self.h > 0) or not np.isfinite(self.h):
            raise NonPositiveSmoothingError(f"h must be a positive finite number, got {self.h}")


def validate_params(p: NlmParams, n: int) -> None:
    """Raise a :class:`ValidationError` subclass unless ``p`` suits length ``n``."""
    if n < 1:
        raise EmptySignalError("signal length must be >= 1")
    if p.search_radius < 0:
        raise NegativeSearchRadiusError(f"search radius must be >= 0, got {p.search_radius}")
    if p.patch_radius < 0:
        raise NegativePatchRadiusError(f"patch radius must be >= 0, got {p.patch_radius}")
    if not (p.h > 0):
        raise NonPositiveSmoothingError(f"h must be positive, got {p.h}")
    if p.patch_radius > n:
        raise PatchRadiusTooLargeError(
            f"patch radius exceeds signal length ({p.patch_radius} > {n})")


def extend_symmetric(f: ArrayLike, pad: int) -> Signal1D:
    """Half-sample symmetric extension by ``pad`` samples on each side.

    ``[1, 2, 3, 4]`` padded by 1 gives ``[1, 1, 2, 3, 4, 4]``.
    """
    f = as_signal(f)
    if pad < 0:
        raise ValidationError(f"pad must be >= 0, got {pad}")
    if pad > f.size:
        raise InsufficientSignalError(
            f"insufficient signal for symmetric extension (pad {pad} > length {f.size})")
    return np.pad(f, pad, mode="symmetric")
