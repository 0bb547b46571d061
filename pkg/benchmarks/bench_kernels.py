"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both paths are called directly (the module-level dispatch is bypassed), so a
single process compares them.  The first numba call is reported separately
as compile time.
"""
import argparse
import time

import numpy as np

from rswalk import kernels
from rswalk._accel import NUMBA_AVAILABLE
from rswalk.convolution import ntt_primes
from rswalk.dyadic import PRESETS


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    p, root = ntt_primes()[0]
    x = np.random.default_rng(1).integers(0, p, size=1 << 16).astype(np.int64)
    yield ("ntt 2^16", lambda: kernels._ntt_numpy(x, p, root), lambda: kernels._ntt_numba(x, p, root))

    _, f = PRESETS["paper-counterexample"]
    table = np.asarray(f.table, dtype=np.int64)
    cayley = np.array([[0, 1], [1, 0]], dtype=np.int64)
    yield (
        "brute force k=16 r=3",
        lambda: kernels._brute_force_counts_numpy(table, cayley, 3, 16),
        lambda: kernels._brute_force_counts_numba(table, cayley, 3, 16),
    )

    rng = np.random.default_rng(2)
    hi = rng.integers(0, 2**64, size=1 << 16, dtype=np.uint64)
    lo = rng.integers(0, 2**64, size=1 << 16, dtype=np.uint64)
    yield (
        "matrix walk k=20 2^16",
        lambda: kernels._matrix_walk_numpy(hi, lo, 20, 0),
        lambda: kernels._matrix_walk_numba(hi, lo, 20, 0),
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<24}{'numpy s':>10}{'numba s':>10}{'compile s':>11}{'speedup':>9}")
    for name, slow, fast in cases():
        t_np = best_of(slow, args.repeat)
        if not NUMBA_AVAILABLE:
            print(f"{name:<24}{t_np:>10.4f}{'n/a':>10}{'n/a':>11}{'n/a':>9}")
            continue
        t0 = time.perf_counter()
        fast()
        compile_s = time.perf_counter() - t0
        t_nb = best_of(fast, args.repeat)
        print(f"{name:<24}{t_np:>10.4f}{t_nb:>10.4f}{compile_s:>11.2f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
