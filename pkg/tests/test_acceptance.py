"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL/SKIP line that is printed in the terminal
summary. Criterion 4 needs the standard 256x256 Peppers test image as an
8-bit PGM; point ``PATCHLIFT_PEPPERS`` at it, otherwise it is skipped.
"""
import math
import os
from pathlib import Path

import numpy as np
import pytest
from numpy.lib.stride_tricks import sliding_window_view

from conftest import ACCEPTANCE_LINES
from patchlift.bench import time_method
from patchlift.core import NlmParams
from patchlift.filters import nlm_1d_naive, nlm_1d_patchlift, nlm_2d_naive, snlm_2d
from patchlift.io import read_pgm
from patchlift.kernel import compute_banded_kernel, kernel_distance_sq
from patchlift.metrics import add_awgn, psnr, ssim
from patchlift.ops import OpCounter


@pytest.fixture
def criterion(request):
    """Record the outcome of the criterion test under the given label."""
    label = request.node.get_closest_marker("criterion").args[0]
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    if rep is None or rep.skipped:
        status = "SKIP"
    else:
        status = "PASS" if rep.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] {label} {state['detail']}".rstrip())


def brute_distances(f, K, d):
    """Squared distances between patches at i and i+d, by direct summation."""
    ext = np.pad(f, K, mode="symmetric")
    P = sliding_window_view(ext, 2 * K + 1)
    return np.sum((P[:f.size - d] - P[d:]) ** 2, axis=1)


@pytest.mark.criterion("C1 PatchLift distances equal brute force (1000 cases, rel 1e-9)")
def test_c1_exactness(criterion):
    rng = np.random.default_rng(1)
    worst = 0.0
    pairs = 0
    for _ in range(1000):
        n = int(rng.integers(8, 257))
        K = int(rng.integers(0, 9))
        S = int(rng.integers(1, 17))
        f = rng.uniform(0, 255, n)
        kern = compute_banded_kernel(f, S, K)
        for d in range(0, min(S, n - 1) + 1):
            ref = brute_distances(f, K, d)
            for i in range(n - d):
                for a, b in ((i, i + d), (i + d, i)):
                    err = abs(kernel_distance_sq(kern, a, b) - ref[i]) / max(1.0, ref[i])
                    worst = max(worst, err)
                    pairs += 1
    criterion["detail"] = f"pairs={pairs} worst_rel_err={worst:.2e}"
    assert worst <= 1e-9


@pytest.mark.criterion("C2 nlm_1d_patchlift == nlm_1d_naive (500 cases, abs 1e-9)")
def test_c2_filter_equivalence(criterion):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(1, 300))
        K = int(rng.integers(0, min(n, 8) + 1))
        p = NlmParams(int(rng.integers(0, 17)), K, float(rng.uniform(1, 500)))
        f = rng.uniform(0, 255, n)
        worst = max(worst, float(np.max(np.abs(nlm_1d_patchlift(f, p) - nlm_1d_naive(f, p)))))
    criterion["detail"] = f"worst_abs_err={worst:.2e}"
    assert worst <= 1e-9


@pytest.mark.criterion("C3a kernel adds flat in K, naive adds grow >=4x (N=4096, S=10)")
def test_c3a_op_counts(criterion):
    f = np.random.default_rng(3).uniform(0, 255, 4096)
    kern_adds, naive_adds = {}, {}
    for K in (2, 16):
        c = OpCounter()
        compute_banded_kernel(f, 10, K, counter=c)
        kern_adds[K] = c.adds
        c = OpCounter()
        nlm_1d_naive(f, NlmParams(10, K, 30.0), counter=c)
        naive_adds[K] = c.adds
    change = abs(kern_adds[16] - kern_adds[2]) / kern_adds[2]
    growth = naive_adds[16] / naive_adds[2]
    criterion["detail"] = f"kernel_change={change:.2%} naive_growth={growth:.2f}x"
    assert change < 0.05
    assert growth >= 4.0


@pytest.mark.criterion("C3b snlm >= 10x faster than nlm2d (128^2, S=10, K=3)")
def test_c3b_speedup(criterion):
    p = NlmParams(10, 3, 30.0)
    slow = time_method("nlm2d", 128, p, trials=3, seed=4)
    fast = time_method("snlm", 128, p, trials=3, seed=4)
    ratio = slow.wall_time / fast.wall_time
    criterion["detail"] = (f"nlm2d={slow.wall_time:.3f}s snlm={fast.wall_time:.4f}s "
                           f"ratio={ratio:.1f}x")
    assert ratio >= 10.0


def _peppers():
    path = os.environ.get("PATCHLIFT_PEPPERS")
    if not path or not Path(path).is_file():
        return None
    img = read_pgm(path)
    return img if img.shape == (256, 256) else None


@pytest.mark.criterion("C4 Peppers sigma=30: S-NLM 26.57 +/-0.5 dB, NLM 24.99 +/-0.5 dB")
def test_c4_table_reproduction(criterion):
    clean = _peppers()
    if clean is None:
        criterion["detail"] = "(set PATCHLIFT_PEPPERS to a 256x256 Peppers PGM)"
        pytest.skip("standard Peppers test image not supplied")
    sigma = 30.0
    s_psnr, n_psnr = [], []
    for seed in range(10):
        noisy = add_awgn(clean, sigma, seed)
        s_psnr.append(psnr(clean, snlm_2d(noisy, NlmParams(10, 3, 3 * sigma))))
        n_psnr.append(psnr(clean, nlm_2d_naive(noisy, NlmParams(10, 3, 10 * sigma))))
    s, n = float(np.mean(s_psnr)), float(np.mean(n_psnr))
    criterion["detail"] = f"snlm={s:.2f}dB nlm={n:.2f}dB"
    assert abs(s - 26.57) <= 0.5
    assert abs(n - 24.99) <= 0.5


@pytest.mark.criterion("C5 outputs within input [min, max] (100 random 64^2 images)")
def test_c5_convex_bounds(criterion):
    rng = np.random.default_rng(5)
    for _ in range(100):
        img = rng.uniform(0, 255, (64, 64)) * rng.uniform(0.01, 1) + rng.uniform(-50, 50)
        p = NlmParams(int(rng.integers(1, 6)), int(rng.integers(0, 4)),
                      float(rng.uniform(5, 300)))
        lo, hi = img.min(), img.max()
        for out in (snlm_2d(img, p), nlm_2d_naive(img, p)):
            assert lo <= out.min() and out.max() <= hi
    criterion["detail"] = "all pixels in range"


@pytest.mark.criterion("C6 transpose equivariance, constant/S=0 fixpoints, h=1e9 window mean")
def test_c6_structural_invariants(criterion):
    rng = np.random.default_rng(6)
    img = rng.uniform(0, 255, (33, 47))
    p = NlmParams(5, 2, 40.0)
    np.testing.assert_array_equal(snlm_2d(img.T, p), snlm_2d(img, p).T)

    sig = rng.uniform(0, 255, 80)
    filters_1d = (nlm_1d_naive, nlm_1d_patchlift)
    filters_2d = (snlm_2d, nlm_2d_naive)
    for c in (0.0, 0.1, 137.25, -3.3):
        for fn in filters_1d:
            np.testing.assert_array_equal(fn(np.full(40, c), p), np.full(40, c))
        for fn in filters_2d:
            np.testing.assert_array_equal(fn(np.full((20, 24), c), p), np.full((20, 24), c))

    p0 = NlmParams(0, 3, 40.0)
    for fn in filters_1d:
        np.testing.assert_array_equal(fn(sig, p0), sig)
    for fn in filters_2d:
        np.testing.assert_array_equal(fn(img, p0), img)

    S = 4
    pinf = NlmParams(S, 2, 1e9)
    mean_1d = np.array([sig[max(0, i - S):i + S + 1].mean() for i in range(sig.size)])
    H, W = img.shape
    mean_2d = np.array([[img[max(0, y - S):y + S + 1, max(0, x - S):x + S + 1].mean()
                         for x in range(W)] for y in range(H)])
    worst = 0.0
    for fn in filters_1d:
        worst = max(worst, float(np.max(np.abs(fn(sig, pinf) - mean_1d))))
    for fn in filters_2d:
        worst = max(worst, float(np.max(np.abs(fn(img, pinf) - mean_2d))))
    criterion["detail"] = f"h=1e9 worst_dev={worst:.2e}"
    assert worst <= 1e-6


@pytest.mark.criterion("C7 metric sanity: PSNR(+16)=24.049, SSIM(a,a)=1, AWGN std 40+/-1")
def test_c7_metrics(criterion):
    rng = np.random.default_rng(7)
    a = rng.uniform(0, 200, (64, 64))
    value = psnr(a, a + 16)
    assert abs(value - 24.049) <= 0.001
    assert ssim(a, a) == 1.0
    field = np.zeros((512, 512))
    noise = add_awgn(field, 40.0, 7) - field
    std = float(noise.std())
    criterion["detail"] = f"psnr={value:.4f} std={std:.3f} mean={noise.mean():+.3f}"
    assert abs(std - 40.0) <= 1.0
    assert math.isclose(ssim(a, a), 1.0)
