"""Numba and numpy kernel paths must agree (exactly for integer kernels)."""
import numpy as np
import pytest

from rswalk import kernels
from rswalk._accel import BACKEND, NUMBA_AVAILABLE
from rswalk.convolution import ntt_primes
from rswalk.dyadic import cyclic_group, symmetric_group

needs_numba = pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba backend disabled")


def test_backend_flag_consistent():
    assert BACKEND == ("numba" if NUMBA_AVAILABLE else "numpy")


@needs_numba
@pytest.mark.parametrize("log_n", [1, 4, 10, 14])
def test_ntt_parity(log_n):
    p, root = ntt_primes()[1]
    x = np.random.default_rng(log_n).integers(0, p, size=1 << log_n).astype(np.int64)
    assert np.array_equal(kernels._ntt_numpy(x, p, root), kernels._ntt_numba(x, p, root))


def test_ntt_matches_dft_definition():
    p, g = ntt_primes()[0]
    n = 8
    w = pow(g, (p - 1) // n, p)
    x = np.arange(1, n + 1, dtype=np.int64)
    expected = [sum(int(x[j]) * pow(w, i * j, p) for j in range(n)) % p for i in range(n)]
    assert kernels.ntt(x, p, w).tolist() == expected


@needs_numba
@pytest.mark.parametrize("group", [cyclic_group(2), cyclic_group(5), symmetric_group(3)])
@pytest.mark.parametrize("r,k", [(1, 0), (3, 5), (4, 9)])
def test_brute_force_parity(group, r, k):
    table = np.random.default_rng(r * 31 + k).integers(0, group.order, size=1 << r).astype(np.int64)
    a = kernels._brute_force_counts_numpy(table, group.cayley, r, k)
    b = kernels._brute_force_counts_numba(table, group.cayley, r, k)
    assert np.array_equal(a, b) and a.sum() == 1 << (r + k)


def test_brute_force_numpy_chunking():
    g = symmetric_group(3)
    table = np.array([1, 2, 3, 4], dtype=np.int64)
    whole = kernels._brute_force_counts_numpy(table, g.cayley, 2, 8)
    chunked = kernels._brute_force_counts_numpy(table, g.cayley, 2, 8, chunk=37)
    assert np.array_equal(whole, chunked)


def test_doubled_phase_is_exact_shift():
    hi = np.array([0x8000_0000_0000_0001, 0x0123_4567_89AB_CDEF], dtype=np.uint64)
    lo = np.array([0xFFFF_FFFF_FFFF_FFFF, 0], dtype=np.uint64)
    for j in range(0, 70, 7):
        frac = [((int(h) << 64 | int(l)) << j) % (1 << 128) for h, l in zip(hi, lo)]
        expected = [(f >> 75) * 2.0**-53 for f in frac]
        assert kernels.doubled_phase(hi, lo, j).tolist() == expected


@needs_numba
@pytest.mark.parametrize("kind", [0, 1])
@pytest.mark.parametrize("k", [0, 5, 40])
def test_matrix_walk_parity(kind, k):
    rng = np.random.default_rng(k + 100 * kind)
    hi = rng.integers(0, 2**64, size=257, dtype=np.uint64)
    lo = rng.integers(0, 2**64, size=257, dtype=np.uint64)
    a = kernels._matrix_walk_numpy(hi, lo, k, kind)
    b = kernels._matrix_walk_numba(hi, lo, k, kind)
    assert np.max(np.abs(a - b)) <= 1e-13


def test_numpy_backend_subprocess():
    import os
    import subprocess
    import sys

    code = (
        "from rswalk import BACKEND, dyadic;"
        "g=dyadic.cyclic_group(2);f=dyadic.PRESETS['paper-counterexample'][1];"
        "print(BACKEND, dyadic.brute_force_distribution(g,f,4).to_dict()['0'])"
    )
    env = {**os.environ, "RSWALK_BACKEND": "numpy"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "5/8"]
