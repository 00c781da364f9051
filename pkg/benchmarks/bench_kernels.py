#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Usage:
    python benchmarks/bench_kernels.py

Builds the timing table for the three hot kernels on representative
workloads.  If the compiled core is unavailable only the fallback column is
reported.
"""

import math
import time

import numpy as np

from specmom.kernels import pyimpl

try:
    from specmom.kernels import _core

    HAVE_CORE = True
except ImportError:
    _core = None
    HAVE_CORE = False


def timeit(fn, *args, repeat=3):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def unit_tables(c):
    units = np.array([a for a in range(c) if math.gcd(a, c) == 1], dtype=np.int64)
    invs = np.array([pow(int(a), -1, c) for a in units], dtype=np.int64)
    return units, invs


def bench_kloosterman(impl):
    units, invs = TABLES
    def run():
        for m in range(-20, 21):
            for n in range(m, 21):
                impl.kloost_sum(m, n, C_BENCH, units, invs)
    return timeit(run)


def bench_rs(impl):
    return timeit(impl.rs_mainsum, RS_T, RS_THETA, 140)


def bench_kquad(impl):
    return timeit(impl.k_quad_factored, KQ_T, 2.0, KQ_U, KQ_W)


C_BENCH = 499
TABLES = unit_tables(C_BENCH)
RS_T = np.sort(np.random.default_rng(1).uniform(1.0e5, 1.25e5, size=20_000))
RS_THETA = np.random.default_rng(2).uniform(-3.0, 3.0, size=20_000)
KQ_T = np.random.default_rng(3).uniform(0.0, 10.0, size=4096)
KQ_U, KQ_W = np.linspace(0.0, 8.0, 2048), np.full(2048, 8.0 / 2048.0)


def main():
    rows = [
        ("kloosterman  (861 sums, c=499)", bench_kloosterman),
        ("rs_mainsum   (20k t, N=140)", bench_rs),
        ("k_quad block (4096 t x 2048 u)", bench_kquad),
    ]
    print(f"{'kernel':<34} {'numpy':>10} {'compiled':>10} {'speedup':>9}")
    for label, bench in rows:
        t_py = bench(pyimpl)
        if HAVE_CORE:
            t_c = bench(_core)
            print(f"{label:<34} {t_py * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms {t_py / t_c:>8.1f}x")
        else:
            print(f"{label:<34} {t_py * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>9}")
    if not HAVE_CORE:
        print("\ncompiled core not built; run: python setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
