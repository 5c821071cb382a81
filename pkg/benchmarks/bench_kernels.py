"""Benchmark the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--max-n 22] [--repeats 5]

The two backends are bit-identical (asserted here on every case); the table
reports wall-clock medians and the speedup of the active compiled extension
over the fallback.  Set HADSIM_PURE_PYTHON=1 to check which backend is
importable without timing it.
"""

import argparse
import time

import numpy as np

from hadsim import kernels


def _median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return sorted(times)[len(times) // 2]


def bench(max_n: int, repeats: int) -> None:
    active, fallback = kernels.backend_pair()
    if active is fallback:
        print("compiled extension unavailable; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':<14} {'n':>3} {'compiled':>12} {'fallback':>12} {'speedup':>8}")
    for n in range(14, max_n + 1, 2):
        size = 1 << n
        base = rng.normal(size=size) + 1j * rng.normal(size=size)
        base /= np.linalg.norm(base)

        a, b = base.copy(), base.copy()
        tc = _median_time(lambda: active.fwht_inplace(a, n), repeats)
        tf = _median_time(lambda: fallback.fwht_inplace(b, n), repeats)
        assert np.array_equal(a, b)
        print(f"{'fwht':<14} {n:>3} {tc*1e3:>10.2f}ms {tf*1e3:>10.2f}ms {tf/tc:>7.1f}x")

        a, b = base.copy(), base.copy()
        cmask, tmask = 1 << (n - 1), 0b101
        tc = _median_time(lambda: active.toffoli_inplace(a, cmask, tmask), repeats)
        tf = _median_time(lambda: fallback.toffoli_inplace(b, cmask, tmask), repeats)
        assert np.array_equal(a, b)
        print(f"{'toffoli':<14} {n:>3} {tc*1e3:>10.2f}ms {tf*1e3:>10.2f}ms {tf/tc:>7.1f}x")

        table = rng.permutation(size).astype(np.int64)
        outa, outb = np.empty_like(base), np.empty_like(base)
        tc = _median_time(lambda: active.permute(base, table, outa), repeats)
        tf = _median_time(lambda: fallback.permute(base, table, outb), repeats)
        assert np.array_equal(outa, outb)
        print(f"{'permute':<14} {n:>3} {tc*1e3:>10.2f}ms {tf*1e3:>10.2f}ms {tf/tc:>7.1f}x")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=22)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    bench(args.max_n, args.repeats)
