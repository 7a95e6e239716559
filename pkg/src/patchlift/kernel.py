"""PatchLift: exact 1-D patch distances from a banded lifted kernel.

The lift of a signal ``f`` is the outer product ``F(i, j) = f(i) f(j)``.
Summing it along sub-diagonals over a length ``2K+1`` window gives the kernel

    Fbar(i, j) = sum_{k=-K..K} F(i+k, j+k)

and every squared patch distance is then

    rho(i, j)^2 = Fbar(i, i) + Fbar(j, j) - 2 Fbar(i, j).

Neighbouring entries on a diagonal differ by one entry entering and one
leaving the window, so each diagonal costs one O(K) start-up sum followed
by two additions per step. Only the band ``|i - j| <= S`` is ever built,
which keeps both time and storage at O(NS).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit
from numpy.typing import ArrayLike

from .core import NlmParams, Signal1D, ValidationError, as_signal, extend_symmetric, validate_params
from .ops import ADDS, MULS, OpCounter, new_buffer


class OutOfBandError(ValidationError):
    pass


@njit(cache=True, nogil=True)
def _fill_band(ext, n, S, K, values, counts):
    # ext is f padded by K on both sides; values[i, S + d] holds Fbar(i, i + d)
    L = 2 * K + 1
    adds = 0
    muls = 0
    for d in range(min(S, n - 1) + 1):
        acc = 0.0
        for t in range(L):
            acc += ext[t] * ext[d + t]
        adds += L
        muls += L
        values[0, S + d] = acc
        values[d, S - d] = acc
        for i in range(1, n - d):
            j = i + d
            acc = acc + ext[i + 2 * K] * ext[j + 2 * K] - ext[i - 1] * ext[j - 1]
            values[i, S + d] = acc
            values[j, S - d] = acc
        adds += 2 * (n - d - 1)
        muls += 2 * (n - d - 1)
    counts[ADDS] += adds
    counts[MULS] += muls


@njit(cache=True, nogil=True)
def _extend(f, pad):
    n = f.shape[0]
    ext = np.empty(n + 2 * pad)
    for p in range(n + 2 * pad):
        t = p - pad
        if t < 0:
            t = -1 - t
        elif t >= n:
            t = 2 * n - 1 - t
        ext[p] = f[t]
    return ext


@njit(cache=True, nogil=True)
def _band(f, S, K, counts):
    n = f.shape[0]
    values = np.full((n, 2 * S + 1), np.nan)
    _fill_band(_extend(f, K), n, S, K, values, counts)
    return values


@dataclass
class BandedKernel:
    """Kernel entries ``Fbar(i, j)`` for ``|i - j| <= S``.

    ``values[i, o]`` holds ``Fbar(i, i + o - S)``. Cells whose column index
    falls outside ``[0, n)`` hold NaN and are never read.
    """

    n: int
    band_radius: int
    values: np.ndarray
    clamp_events: int = field(default=0, compare=False)
    worst_clamp_ratio: float = field(default=0.0, compare=False)

    def __getitem__(self, ij):
        i, j = ij
        self._check(i, j)
        return float(self.values[i, j - i + self.band_radius])

    def _check(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"kernel index ({i}, {j}) outside [0, {self.n})")
        if abs(i - j) > self.band_radius:
            raise OutOfBandError(
                f"pair outside kernel band: |{i} - {j}| > {self.band_radius}")


def lift_value(f: ArrayLike, i: int, j: int, pad: int = 0) -> float:
    """Entry ``(i, j)`` of the tensor lift of ``f``, i.e. ``f(i) * f(j)``.

    Indices may reach ``pad`` samples past either end, in which case the
    half-sample symmetric extension supplies the value.
    """
    f = as_signal(f)
    n = f.size
    for idx in (i, j):
        if not -pad <= idx < n + pad:
            raise IndexError(f"lift index {idx} outside [-{pad}, {n + pad})")

    def at(t):
        if t < 0:
            t = -1 - t
        elif t >= n:
            t = 2 * n - 1 - t
        return f[t]

    return float(at(i) * at(j))


def compute_banded_kernel(f: ArrayLike, S: int, K: int,
                          counter: OpCounter | None = None) -> BandedKernel:
    """Build the banded kernel of ``f`` for search radius ``S``, patch radius ``K``.

    Parameters
    ----------
    f : array_like
        One-dimensional signal of length N.
    S : int
        Band half-width (search radius).
    K : int
        Patch radius; patch content near the borders comes from the
        half-sample symmetric extension of ``f``.
    counter : OpCounter, optional
        Receives the additions and multiplications performed.

    Returns
    -------
    BandedKernel
    """
    f = as_signal(f)
    validate_params(NlmParams(S, K, 1.0), f.size)
    buf = new_buffer()
    values = _band(f, S, K, buf)
    if counter is not None:
        counter.absorb(buf)
    return BandedKernel(n=f.size, band_radius=S, values=values)


def kernel_distance_sq(kern: BandedKernel, i: int, j: int) -> float:
    """Squared distance between the patches at ``i`` and ``j`` read off the kernel.

    Round-off can push the difference slightly below zero for near-identical
    patches; such values are clamped to 0 and tallied on the kernel.
    """
    kern._check(i, j)
    S = kern.band_radius
    v = kern.values
    d = v[i, S] + v[j, S] - 2.0 * v[i, j - i + S]
    if d < 0.0:
        kern.clamp_events += 1
        scale = v[i, S]
        ratio = -d / scale if scale > 0 else np.inf
        kern.worst_clamp_ratio = max(kern.worst_clamp_ratio, ratio)
        d = 0.0
    return float(d)


def patch_distance_sq_naive(f: ArrayLike, i: int, j: int, K: int) -> float:
    """Squared distance between the patches at ``i`` and ``j`` by direct summation."""
    f = as_signal(f)
    n = f.size
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"patch centre outside [0, {n})")
    ext = extend_symmetric(f, K)
    L = 2 * K + 1
    diff = ext[i:i + L] - ext[j:j + L]
    return float(np.dot(diff, diff))


def kernel_to_csv_rows(kern: BandedKernel):
    """Yield ``(i, j, value)`` for every defined band cell with ``i <= j``."""
    S = kern.band_radius
    for i in range(kern.n):
        for d in range(0, min(S, kern.n - 1 - i) + 1):
            yield i, i + d, float(kern.values[i, S + d])
