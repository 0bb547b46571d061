"""Exact integer convolution: schoolbook reference and multi-prime NTT fast path.

Integer coefficient arrays are numpy ``object`` arrays of Python ints.  The
fast path reduces both operands modulo enough NTT-friendly primes to cover
the worst-case output magnitude, convolves each residue stream with the
transform kernel, and rebuilds the exact result with Garner's mixed-radix
recombination.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import kernels

# transform lengths up to 2**TWO_ADICITY are supported
TWO_ADICITY = 23
_PRIME_CEILING = 1 << 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_root(p: int) -> int:
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("no primitive root")  # pragma: no cover


@lru_cache(maxsize=None)
def ntt_primes() -> tuple[tuple[int, int], ...]:
    """(prime, primitive root) pairs with p = c * 2**23 + 1 < 2**31, largest first."""
    out = []
    c = (_PRIME_CEILING - 1) >> TWO_ADICITY
    while c > 0:
        p = (c << TWO_ADICITY) + 1
        if p < _PRIME_CEILING and _is_prime(p):
            out.append((p, _primitive_root(p)))
        c -= 1
    return tuple(out)


def _max_abs(a: np.ndarray) -> int:
    return max(abs(int(v)) for v in a) if a.shape[0] else 0


def schoolbook_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Direct O(len(a) * len(b)) convolution of integer object arrays."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros(0, dtype=object)
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=object)
    out[:] = 0
    la = a.shape[0]
    for i, bi in enumerate(b):
        if bi:
            out[i : i + la] += a * bi
    return out


def _garner(residues: list[np.ndarray], primes: list[int]) -> np.ndarray:
    digits = [residues[0]]
    for i in range(1, len(primes)):
        pi = primes[i]
        acc = digits[i - 1].copy()
        for j in range(i - 2, -1, -1):
            acc = (acc * primes[j] + digits[j]) % pi
        prefix = 1
        for j in range(i):
            prefix = prefix * primes[j] % pi
        inv = pow(prefix, pi - 2, pi)
        digits.append((residues[i] - acc) % pi * inv % pi)
    x = digits[-1].astype(object)
    for j in range(len(primes) - 2, -1, -1):
        x = x * primes[j] + digits[j].astype(object)
    modulus = 1
    for p in primes:
        modulus *= p
    half = modulus // 2
    return np.where(x > half, x - modulus, x)


def ntt_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact convolution via residue transforms; falls back to schoolbook if out of range."""
    la, lb = a.shape[0], b.shape[0]
    if la == 0 or lb == 0:
        return np.zeros(0, dtype=object)
    out_len = la + lb - 1
    size = 1 << (out_len - 1).bit_length()
    bound = _max_abs(a) * _max_abs(b) * min(la, lb)
    if size > (1 << TWO_ADICITY):
        return schoolbook_convolve(a, b)
    primes, modulus = [], 1
    for p, g in ntt_primes():
        if modulus > 2 * bound:
            break
        primes.append((p, g))
        modulus *= p
    if modulus <= 2 * bound:
        return schoolbook_convolve(a, b)
    same = a is b
    residues = []
    for p, g in primes:
        ra = (a % p).astype(np.int64)
        rb = ra if same else (b % p).astype(np.int64)
        conv = kernels.cyclic_convolve_mod(ra, rb, p, g, size)
        residues.append(conv[:out_len])
    return _garner(residues, [p for p, _ in primes])
