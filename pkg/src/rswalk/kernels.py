"""Hot inner loops, each in a numba flavour and a pure-numpy flavour.

The public names (``ntt``, ``brute_force_counts``, ``matrix_walk``) dispatch
on :data:`rswalk._accel.BACKEND`.  The ``*_numpy`` and ``*_numba`` variants
stay importable so the benchmark and tests can compare them directly.
"""
from __future__ import annotations

import numpy as np

from ._accel import BACKEND, NUMBA_AVAILABLE, njit

TWO_PI = 2.0 * np.pi
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


# --------------------------------------------------------------------------
# number-theoretic transform over Z/pZ, p < 2**31
# --------------------------------------------------------------------------

def _bitrev_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _ntt_numpy(x: np.ndarray, p: int, root: int) -> np.ndarray:
    """Forward transform of ``x`` (length a power of two) using ``root`` of order len(x)."""
    n = x.shape[0]
    a = x[_bitrev_indices(n)].astype(np.int64) % p
    length = 2
    while length <= n:
        half = length // 2
        w_len = pow(root, n // length, p)
        tw = np.ones(1, dtype=np.int64)
        while tw.shape[0] < half:
            step = pow(w_len, tw.shape[0], p)
            tw = np.concatenate([tw, tw * step % p])
        blocks = a.reshape(n // length, length)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * tw[:half] % p
        blocks[:, :half] = (u + v) % p
        blocks[:, half:] = (u - v) % p
        a = blocks.reshape(n)
        length *= 2
    return a


@njit(cache=True)
def _ntt_core_numba(a, p, root):
    n = a.shape[0]
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            tmp = a[i]
            a[i] = a[j]
            a[j] = tmp
    length = 2
    while length <= n:
        # w_len = root ** (n // length) mod p
        e = n // length
        w_len = 1
        base = root % p
        while e > 0:
            if e & 1:
                w_len = w_len * base % p
            base = base * base % p
            e >>= 1
        half = length // 2
        for start in range(0, n, length):
            w = 1
            for t in range(half):
                u = a[start + t]
                v = a[start + t + half] * w % p
                s = u + v
                if s >= p:
                    s -= p
                d = u - v
                if d < 0:
                    d += p
                a[start + t] = s
                a[start + t + half] = d
                w = w * w_len % p
        length *= 2
    return a


def _ntt_numba(x: np.ndarray, p: int, root: int) -> np.ndarray:
    a = np.ascontiguousarray(x, dtype=np.int64) % p
    return _ntt_core_numba(a, np.int64(p), np.int64(root))


def ntt(x: np.ndarray, p: int, root: int) -> np.ndarray:
    if BACKEND == "numba":
        return _ntt_numba(x, p, root)
    return _ntt_numpy(x, p, root)


def cyclic_convolve_mod(a: np.ndarray, b: np.ndarray, p: int, generator: int, size: int) -> np.ndarray:
    """Cyclic convolution of residue vectors of length ``size`` (power of two) mod p."""
    root = pow(generator, (p - 1) // size, p)
    fa = np.zeros(size, dtype=np.int64)
    fa[: a.shape[0]] = a
    fb = np.zeros(size, dtype=np.int64)
    fb[: b.shape[0]] = b
    fa = ntt(fa, p, root)
    if a is b:
        fb = fa
    else:
        fb = ntt(fb, p, root)
    prod = fa * fb % p
    out = ntt(prod, p, pow(root, p - 2, p))
    return out * pow(size, p - 2, p) % p


# --------------------------------------------------------------------------
# brute-force enumeration of dyadic step-function products
# --------------------------------------------------------------------------

def _brute_force_counts_numpy(table, cayley, r, k, chunk=1 << 20):
    order = cayley.shape[0]
    mask = (1 << r) - 1
    total = 1 << (k + r)
    counts = np.zeros(order, dtype=np.int64)
    for start in range(0, total, chunk):
        i = np.arange(start, min(start + chunk, total), dtype=np.int64)
        g = table[(i >> k) & mask]
        for j in range(1, k + 1):
            g = cayley[table[(i >> (k - j)) & mask], g]
        counts += np.bincount(g, minlength=order)
    return counts


@njit(cache=True)
def _brute_force_counts_core(table, cayley, r, k):
    order = cayley.shape[0]
    mask = (1 << r) - 1
    total = 1 << (k + r)
    counts = np.zeros(order, dtype=np.int64)
    for i in range(total):
        g = table[(i >> k) & mask]
        for j in range(1, k + 1):
            g = cayley[table[(i >> (k - j)) & mask], g]
        counts[g] += 1
    return counts


def _brute_force_counts_numba(table, cayley, r, k):
    return _brute_force_counts_core(
        np.ascontiguousarray(table, dtype=np.int64),
        np.ascontiguousarray(cayley, dtype=np.int64),
        np.int64(r),
        np.int64(k),
    )


def brute_force_counts(table, cayley, r, k):
    """Count, over all 2**(k+r) dyadic intervals, the value of the ordered product."""
    table = np.asarray(table, dtype=np.int64)
    cayley = np.asarray(cayley, dtype=np.int64)
    if BACKEND == "numba":
        return _brute_force_counts_numba(table, cayley, r, k)
    return _brute_force_counts_numpy(table, cayley, r, k)


# --------------------------------------------------------------------------
# lacunary 2x2 matrix walks
# --------------------------------------------------------------------------
# A sample point t in [0, 1) is carried as a 128-bit fixed-point number
# (hi, lo); frac(2**j t) is then an exact shift, so the doubling map is
# applied without accumulating rounding in the phase.

def doubled_phase(hi: np.ndarray, lo: np.ndarray, j: int) -> np.ndarray:
    """frac(2**j t) as float64 for 0 <= j < 64."""
    if j == 0:
        top = hi
    else:
        top = (hi << np.uint64(j)) | (lo >> np.uint64(64 - j))
    # keep 53 significant bits so the conversion is exact
    return (top >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _walk_factor(kind: int, w):
    s = _INV_SQRT2
    if kind == 0:
        wi = np.conj(w)
        return 1j * s * wi, 1j * s * w, 1j * s * wi, -1j * s * w
    return s + 0j * w, s * w, s + 0j * w, -s * w


def _matrix_walk_numpy(hi, lo, k, kind):
    n = hi.shape[0]
    out = np.empty((n, 2, 2), dtype=np.complex128)
    w = np.exp(1j * TWO_PI * doubled_phase(hi, lo, 0))
    a, b, c, d = _walk_factor(kind, w)
    for j in range(1, k + 1):
        w = np.exp(1j * TWO_PI * doubled_phase(hi, lo, j))
        e, f, g, h = _walk_factor(kind, w)
        a, b, c, d = e * a + f * c, e * b + f * d, g * a + h * c, g * b + h * d
    out[:, 0, 0] = a
    out[:, 0, 1] = b
    out[:, 1, 0] = c
    out[:, 1, 1] = d
    return out


@njit(cache=True)
def _matrix_walk_core(hi, lo, k, kind, out):
    s = 1.0 / np.sqrt(2.0)
    scale = 2.0**-53
    n = hi.shape[0]
    for q in range(n):
        a = 1.0 + 0j
        b = 0j
        c = 0j
        d = 1.0 + 0j
        for j in range(k + 1):
            if j == 0:
                top = hi[q]
            else:
                top = (hi[q] << np.uint64(j)) | (lo[q] >> np.uint64(64 - j))
            phase = np.float64(top >> np.uint64(11)) * scale
            w = np.exp(1j * 2.0 * np.pi * phase)
            if kind == 0:
                wi = np.conj(w)
                e = 1j * s * wi
                f = 1j * s * w
                g = 1j * s * wi
                h = -1j * s * w
            else:
                e = s + 0j
                f = s * w
                g = s + 0j
                h = -s * w
            a, b, c, d = e * a + f * c, e * b + f * d, g * a + h * c, g * b + h * d
        out[q, 0, 0] = a
        out[q, 0, 1] = b
        out[q, 1, 0] = c
        out[q, 1, 1] = d
    return out


def _matrix_walk_numba(hi, lo, k, kind):
    out = np.empty((hi.shape[0], 2, 2), dtype=np.complex128)
    return _matrix_walk_core(hi, lo, np.int64(k), np.int64(kind), out)


def matrix_walk(hi: np.ndarray, lo: np.ndarray, k: int, kind: int) -> np.ndarray:
    """Products F(w**(2**k)) ... F(w) for kind 0 (g, SU(2)) or 1 (G, U(2))."""
    hi = np.ascontiguousarray(hi, dtype=np.uint64)
    lo = np.ascontiguousarray(lo, dtype=np.uint64)
    if BACKEND == "numba":
        return _matrix_walk_numba(hi, lo, k, kind)
    return _matrix_walk_numpy(hi, lo, k, kind)


__all__ = [
    "BACKEND",
    "NUMBA_AVAILABLE",
    "ntt",
    "cyclic_convolve_mod",
    "brute_force_counts",
    "matrix_walk",
    "doubled_phase",
]
