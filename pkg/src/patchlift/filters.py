"""Non-local means filters: 1-D naive and PatchLift, 2-D baseline, separable S-NLM.

All filters average over a search window clipped to the valid index range,
with weights ``exp(-rho^2 / h^2)`` where ``rho^2`` is the squared Euclidean
distance between patches drawn from the half-sample symmetric extension.
The centre sample always takes part with weight 1.

Outputs are accumulated as ``f(i) + sum_j w_ij (f(j) - f(i)) / sum_j w_ij``,
which is the same weighted mean but reproduces constant inputs exactly.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit
from numpy.typing import ArrayLike

from .core import Image2D, NlmParams, Signal1D, as_image, as_signal, validate_params
from .kernel import _band, _extend
from .ops import ADDS, EXPS, MULS, OpCounter, new_buffer

ORDERS = ("avg", "rc", "cr")


def weight(rho_sq: float, h: float) -> float:
    """NLM weight ``exp(-rho_sq / h**2)``."""
    return math.exp(-rho_sq / (h * h))


@njit(cache=True, nogil=True)
def _nlm1d_naive(f, S, K, h, out, counts):
    n = f.shape[0]
    L = 2 * K + 1
    ext = _extend(f, K)
    inv_h2 = 1.0 / (h * h)
    pairs = 0
    for i in range(n):
        lo = max(0, i - S)
        hi = min(n - 1, i + S)
        fi = f[i]
        num = 0.0
        den = 0.0
        for j in range(lo, hi + 1):
            d = 0.0
            for t in range(L):
                e = ext[i + t] - ext[j + t]
                d += e * e
            w = math.exp(-d * inv_h2)
            num += w * (f[j] - fi)
            den += w
        pairs += hi - lo + 1
        out[i] = fi + num / den
    counts[ADDS] += pairs * (2 * L + 2) + 2 * n
    counts[MULS] += pairs * (L + 2) + n
    counts[EXPS] += pairs


@njit(cache=True, nogil=True)
def _nlm1d_patchlift(f, S, K, h, out, counts):
    n = f.shape[0]
    v = _band(f, S, K, counts)
    inv_h2 = 1.0 / (h * h)
    pairs = 0
    for i in range(n):
        lo = max(0, i - S)
        hi = min(n - 1, i + S)
        fi = f[i]
        vii = v[i, S]
        num = 0.0
        den = 0.0
        for j in range(lo, hi + 1):
            d = vii + v[j, S] - 2.0 * v[i, S + j - i]
            if d < 0.0:
                d = 0.0
            w = math.exp(-d * inv_h2)
            num += w * (f[j] - fi)
            den += w
        pairs += hi - lo + 1
        out[i] = fi + num / den
    counts[ADDS] += pairs * 4 + 2 * n
    counts[MULS] += pairs * 3 + n
    counts[EXPS] += pairs


@njit(cache=True, nogil=True)
def _rows_patchlift(X, r0, r1, S, K, h, out, counts):
    for r in range(r0, r1):
        _nlm1d_patchlift(X[r], S, K, h, out[r], counts)


@njit(cache=True, nogil=True)
def _nlm2d_naive(P, H, W, r0, r1, S, K, h, out, counts):
    # P is the image padded symmetrically by K on every side
    L = 2 * K + 1
    inv_h2 = 1.0 / (h * h)
    pairs = 0
    for y in range(r0, r1):
        y0 = max(0, y - S)
        y1 = min(H - 1, y + S)
        for x in range(W):
            x0 = max(0, x - S)
            x1 = min(W - 1, x + S)
            c = P[y + K, x + K]
            num = 0.0
            den = 0.0
            for yy in range(y0, y1 + 1):
                for xx in range(x0, x1 + 1):
                    d = 0.0
                    for a in range(L):
                        for b in range(L):
                            e = P[y + a, x + b] - P[yy + a, xx + b]
                            d += e * e
                    w = math.exp(-d * inv_h2)
                    num += w * (P[yy + K, xx + K] - c)
                    den += w
            pairs += (y1 - y0 + 1) * (x1 - x0 + 1)
            out[y, x] = c + num / den
    npix = (r1 - r0) * W
    counts[ADDS] += pairs * (2 * L * L + 2) + 2 * npix
    counts[MULS] += pairs * (L * L + 2) + npix
    counts[EXPS] += pairs


def _chunks(n, parts):
    parts = max(1, min(parts, n))
    edges = np.linspace(0, n, parts + 1).astype(int)
    return list(zip(edges[:-1], edges[1:]))


def _run_rows(fn, n_rows, threads, counter, *args):
    """Run ``fn(r0, r1, buf)`` over row chunks; results are worker-count independent."""
    spans = _chunks(n_rows, threads)
    bufs = [new_buffer() for _ in spans]
    if len(spans) == 1:
        fn(*spans[0], bufs[0])
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            list(pool.map(lambda sb: fn(*sb[0], sb[1]), zip(spans, bufs)))
    if counter is not None:
        for b in bufs:
            counter.absorb(b)


def nlm_1d_naive(f: ArrayLike, p: NlmParams, counter: OpCounter | None = None) -> Signal1D:
    """1-D NLM with patch distances summed directly, O(NSK)."""
    f = as_signal(f)
    validate_params(p, f.size)
    out = np.empty_like(f)
    buf = new_buffer()
    _nlm1d_naive(f, p.search_radius, p.patch_radius, float(p.h), out, buf)
    if counter is not None:
        counter.absorb(buf)
    return out


def nlm_1d_patchlift(f: ArrayLike, p: NlmParams, counter: OpCounter | None = None) -> Signal1D:
    """1-D NLM with patch distances read off the banded kernel, O(NS)."""
    f = as_signal(f)
    validate_params(p, f.size)
    out = np.empty_like(f)
    buf = new_buffer()
    _nlm1d_patchlift(f, p.search_radius, p.patch_radius, float(p.h), out, buf)
    if counter is not None:
        counter.absorb(buf)
    return out


def row_pass(img: Image2D, p: NlmParams, threads: int = 1,
             counter: OpCounter | None = None) -> Image2D:
    """Apply PatchLift 1-D NLM to every row independently."""
    X = np.ascontiguousarray(img, dtype=np.float64)
    validate_params(p, X.shape[1])
    out = np.empty_like(X)
    S, K, h = p.search_radius, p.patch_radius, float(p.h)
    _run_rows(lambda r0, r1, buf: _rows_patchlift(X, r0, r1, S, K, h, out, buf),
              X.shape[0], threads, counter)
    return out


def column_pass(img: Image2D, p: NlmParams, threads: int = 1,
                counter: OpCounter | None = None) -> Image2D:
    """Apply PatchLift 1-D NLM to every column independently."""
    return row_pass(np.asarray(img).T, p, threads, counter).T


def snlm_2d(img: ArrayLike, p: NlmParams, order: str = "avg", threads: int = 1,
            counter: OpCounter | None = None) -> Image2D:
    """Separable NLM built from 1-D PatchLift passes.

    Parameters
    ----------
    img : array_like
        Two-dimensional image.
    p : NlmParams
        Same ``(S, K, h)`` for every 1-D pass.
    order : {"avg", "rc", "cr"}
        ``"rc"`` filters rows then columns, ``"cr"`` columns then rows, and
        ``"avg"`` (the default S-NLM) returns the mean of both.
    threads : int
        Worker threads per pass. The output does not depend on it.
    counter : OpCounter, optional
        Accumulates operation counts across all passes.
    """
    img = as_image(img)
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    validate_params(p, min(img.shape))
    rc = cr = None
    if order in ("avg", "rc"):
        rc = column_pass(row_pass(img, p, threads, counter), p, threads, counter)
    if order in ("avg", "cr"):
        cr = row_pass(column_pass(img, p, threads, counter), p, threads, counter)
    if order == "rc":
        return np.ascontiguousarray(rc)
    if order == "cr":
        return np.ascontiguousarray(cr)
    return (rc + cr) / 2.0


def nlm_2d_naive(img: ArrayLike, p: NlmParams, threads: int = 1,
                 counter: OpCounter | None = None) -> Image2D:
    """Standard 2-D NLM with full square patches, O(N^2 S^2 K^2).

    Kept deliberately direct: it is the fidelity and speed reference.
    """
    img = as_image(img)
    validate_params(p, min(img.shape))
    H, W = img.shape
    S, K, h = p.search_radius, p.patch_radius, float(p.h)
    P = np.pad(img, K, mode="symmetric")
    out = np.empty_like(img)
    _run_rows(lambda r0, r1, buf: _nlm2d_naive(P, H, W, r0, r1, S, K, h, out, buf),
              H, threads, counter)
    return out
