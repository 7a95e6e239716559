"""Runtime benchmark harness with operation counts.

Absolute times are machine dependent; the numbers worth comparing are the
speedup ratios and the operation counts, which do not depend on the host.
"""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .core import NlmParams
from .filters import nlm_1d_naive, nlm_1d_patchlift, nlm_2d_naive, snlm_2d
from .ops import OpCounter

METHODS_2D = ("nlm2d", "snlm", "snlm-rc", "snlm-cr")
METHODS_1D = ("nlm1d-naive", "nlm1d-patchlift")
BASELINE = {"2d": "nlm2d", "1d": "nlm1d-naive"}
FAST = {"2d": "snlm", "1d": "nlm1d-patchlift"}


def run_method(method: str, data: np.ndarray, p: NlmParams, threads: int = 1,
               counter: OpCounter | None = None) -> np.ndarray:
    if method == "nlm2d":
        return nlm_2d_naive(data, p, threads=threads, counter=counter)
    if method == "snlm":
        return snlm_2d(data, p, "avg", threads=threads, counter=counter)
    if method == "snlm-rc":
        return snlm_2d(data, p, "rc", threads=threads, counter=counter)
    if method == "snlm-cr":
        return snlm_2d(data, p, "cr", threads=threads, counter=counter)
    if method == "nlm1d-naive":
        return nlm_1d_naive(data, p, counter=counter)
    if method == "nlm1d-patchlift":
        return nlm_1d_patchlift(data, p, counter=counter)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class BenchRecord:
    method: str
    image_size: int
    params: NlmParams
    wall_time: float
    ops: OpCounter

    def __str__(self):
        p = self.params
        return (f"method={self.method} size={self.image_size} S={p.search_radius} "
                f"K={p.patch_radius} h={p.h:g} wall_time={self.wall_time:.6f} "
                f"adds={self.ops.adds} muls={self.ops.muls} exps={self.ops.exps}")


def _random_input(mode, size, rng):
    shape = (size,) if mode == "1d" else (size, size)
    return rng.uniform(0.0, 255.0, shape)


def time_method(method: str, size: int, p: NlmParams, trials: int = 3, seed: int = 0,
                mode: str = "2d", threads: int = 1) -> BenchRecord:
    """Median wall time over ``trials`` fresh random inputs, after one warm-up run."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    warm = max(2 * p.patch_radius + 1, 8)
    run_method(method, _random_input(mode, warm, rng), p, threads)
    times = []
    ops = None
    for _ in range(trials):
        data = _random_input(mode, size, rng)
        counter = OpCounter()
        t0 = time.perf_counter()
        run_method(method, data, p, threads, counter)
        times.append(time.perf_counter() - t0)
        ops = counter
    return BenchRecord(method, size, p, max(statistics.median(times), 1e-9), ops)


def run_bench(sizes, S, patches, methods, trials=3, seed=0, mode="2d", h=30.0, threads=1):
    records = []
    for size in sizes:
        for K in patches:
            p = NlmParams(S, K, h)
            for m in methods:
                records.append(time_method(m, size, p, trials, seed, mode, threads))
    return records


def speedups(records, mode="2d"):
    """Yield ``(size, K, baseline_time / fast_time)`` where both methods were run."""
    by_key = {(r.method, r.image_size, r.params.patch_radius): r for r in records}
    base, fast = BASELINE[mode], FAST[mode]
    for (m, size, K), r in by_key.items():
        if m == fast and (base, size, K) in by_key:
            yield size, K, by_key[(base, size, K)].wall_time / r.wall_time


def format_table(records, mode="2d") -> str:
    lines = [f"{'method':<16} {'size':>6} {'K':>3} {'median_s':>12} {'adds':>14} {'muls':>14}"]
    for r in records:
        lines.append(f"{r.method:<16} {r.image_size:>6} {r.params.patch_radius:>3} "
                     f"{r.wall_time:>12.6f} {r.ops.adds:>14} {r.ops.muls:>14}")
    for size, K, ratio in speedups(records, mode):
        lines.append(f"speedup {FAST[mode]}/{BASELINE[mode]} size={size} K={K} ratio={ratio:.1f}")
    return "\n".join(lines)
