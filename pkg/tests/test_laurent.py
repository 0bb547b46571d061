from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rswalk.convolution import ntt_convolve, ntt_primes, schoolbook_convolve
from rswalk.errors import InvalidArgumentError, VariantMismatchError
from rswalk.laurent import (
    COMPLEX,
    RATIONAL,
    LaurentPoly,
    coefficient,
    constant_term,
    halve,
    multiply,
    power,
    reverse,
    split_parity,
    substitute_power,
)

Z = LaurentPoly.monomial(1)


def dict_product(a: LaurentPoly, b: LaurentPoly) -> dict:
    """Pure-python term-by-term product, used as an independent oracle."""
    out = {}
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            e = a.low + b.low + i + j
            out[e] = out.get(e, 0) + x * y
    return {e: c for e, c in out.items() if c != 0}


def as_dict(p: LaurentPoly) -> dict:
    return {p.low + i: c for i, c in enumerate(p.coeffs) if c != 0}


ints = st.integers(-50, 50)
polys = st.builds(
    lambda cs, low: LaurentPoly.from_coeffs(cs, low),
    st.lists(ints, max_size=12),
    st.integers(-6, 6),
)
rational_polys = st.builds(
    lambda cs, low: LaurentPoly.from_coeffs(cs, low, RATIONAL),
    st.lists(st.fractions(max_denominator=9).filter(lambda f: abs(f) < 20), max_size=8),
    st.integers(-4, 4),
)


def test_difference_of_squares():
    assert multiply(1 + Z, 1 - Z) == LaurentPoly.from_coeffs([1, 0, -1])


def test_laurent_product():
    a = LaurentPoly.from_coeffs([1, 1], low=-1)
    assert multiply(a, 1 + Z) == LaurentPoly.from_coeffs([1, 2, 1], low=-1)


def test_autocorrelation_constant_term_is_energy():
    a = LaurentPoly.from_coeffs([1, 1, 1, -1])
    assert constant_term(multiply(a, reverse(a))) == 4


def test_reverse_examples():
    assert reverse(LaurentPoly.from_coeffs([1, 2])) == LaurentPoly.from_coeffs([2, 1], low=-1)
    assert reverse(LaurentPoly.from_coeffs([5])) == 5


def test_substitute_power_examples():
    assert substitute_power(1 + Z, 2) == LaurentPoly.from_coeffs([1, 0, 1])
    a = LaurentPoly.from_coeffs([1, 0, 1], low=-1)
    assert substitute_power(a, 3) == LaurentPoly.from_coeffs([1, 0, 0, 0, 0, 0, 1], low=-3)
    with pytest.raises(InvalidArgumentError):
        substitute_power(a, 0)


def test_coefficient_examples():
    a = LaurentPoly.from_coeffs([1, 0, 3])
    assert coefficient(a, 2) == 3
    assert coefficient(a, 1) == 0
    assert coefficient(a, 99) == 0
    assert constant_term(multiply(1 + Z, reverse(1 + Z))) == 2


def test_halve_examples():
    assert halve(LaurentPoly.from_coeffs([1, 1, 1, 1])) == LaurentPoly.from_coeffs([1, 1])
    a = LaurentPoly.from_coeffs([1, 1, 5], low=-2)
    assert halve(a) == LaurentPoly.from_coeffs([1, 5], low=-1)


def test_canonical_zero():
    z = LaurentPoly.from_coeffs([0, 0, 0], low=7)
    assert z.is_zero() and z.low == 0 and len(z) == 0
    assert LaurentPoly.from_coeffs([0, 2, 0], low=3) == LaurentPoly.monomial(4, 2)


def test_variant_mismatch():
    a = LaurentPoly.from_coeffs([1, 2])
    b = LaurentPoly.from_coeffs([1.0 + 0j], variant=COMPLEX)
    with pytest.raises(VariantMismatchError):
        multiply(a, b)
    with pytest.raises(VariantMismatchError):
        a + b
    with pytest.raises(VariantMismatchError):
        a * 0.5


def test_rational_arithmetic_is_exact():
    a = LaurentPoly.from_coeffs([Fraction(1, 3), Fraction(1, 2)], variant=RATIONAL)
    sq = multiply(a, a)
    assert list(sq.coeffs) == [Fraction(1, 9), Fraction(1, 3), Fraction(1, 4)]


def test_evaluation():
    a = LaurentPoly.from_coeffs([2, 0, 1], low=-1)
    assert a(2.0) == pytest.approx(2 / 2 + 2)


@given(polys, polys)
def test_multiply_matches_oracle(a, b):
    assert as_dict(multiply(a, b)) == dict_product(a, b)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert multiply(a, b) == multiply(b, a)
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
    assert multiply(a, b + c) == multiply(a, b) + multiply(a, c)


@given(rational_polys, rational_polys)
def test_rational_commutative(a, b):
    assert multiply(a, b) == multiply(b, a)
    assert as_dict(multiply(a, b)) == dict_product(a, b)


@given(polys)
def test_reverse_involution_and_isometry(a):
    assert reverse(reverse(a)) == a
    assert sorted(reverse(a).coeffs.tolist()) == sorted(a.coeffs.tolist())
    if not a.is_zero():
        assert reverse(a).low == -(a.low + len(a) - 1)


@given(polys, st.integers(1, 5))
def test_substitute_then_halve(a, s):
    assert substitute_power(a, 1) == a
    assert halve(substitute_power(a, 2)) == a
    assert as_dict(substitute_power(a, s)) == {e * s: c for e, c in as_dict(a).items()}


@given(polys)
def test_halve_coefficients(a):
    h = halve(a)
    for j in range(a.low // 2 - 2, a.high // 2 + 3):
        assert coefficient(h, j) == coefficient(a, 2 * j)
    even, odd = split_parity(a)
    assert even + odd == a
    sp = substitute_power(halve(even), 2)
    assert sp == even and substitute_power(halve(sp), 2) == sp


@given(polys, st.integers(0, 4))
def test_power_by_squaring(a, n):
    expected = LaurentPoly.from_coeffs([1])
    for _ in range(n):
        expected = multiply(expected, a)
    assert power(a, n) == expected


def test_ntt_primes_are_prime():
    sympy = pytest.importorskip("sympy")
    primes = ntt_primes()
    assert len(primes) >= 4
    for p, g in primes:
        assert sympy.isprime(p) and p < 2**31 and (p - 1) % (1 << 23) == 0
        assert sympy.n_order(g, p) == p - 1


@pytest.mark.parametrize("seed", range(40))
def test_fast_path_equals_schoolbook(seed):
    rng = np.random.default_rng(seed)
    la, lb = (int(v) for v in rng.integers(1, 4097, size=2))
    mag = int(rng.choice([1, 1000, 10**9]))
    a = np.array([int(v) for v in rng.integers(-mag, mag + 1, size=la)], dtype=object)
    b = np.array([int(v) for v in rng.integers(-mag, mag + 1, size=lb)], dtype=object)
    assert np.array_equal(ntt_convolve(a, b), schoolbook_convolve(a, b))


def test_fast_path_big_integers():
    rng = np.random.default_rng(0)
    a = np.array([int(v) * 10**30 + 7 for v in rng.integers(-99, 99, size=300)], dtype=object)
    b = np.array([int(v) for v in rng.integers(-(10**6), 10**6, size=500)], dtype=object)
    assert np.array_equal(ntt_convolve(a, b), schoolbook_convolve(a, b))


def test_threshold_does_not_change_result():
    rng = np.random.default_rng(5)
    a = LaurentPoly.from_coeffs([int(v) for v in rng.integers(-3, 4, size=700)], low=-10)
    b = LaurentPoly.from_coeffs([int(v) for v in rng.integers(-3, 4, size=300)], low=4)
    assert multiply(a, b, threshold=1) == multiply(a, b, threshold=10**9)


def test_fast_path_thousand_pairs():
    # int64 np.convolve is exact here (|sum| < 4096 * 1000**2), so it serves as the oracle
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        la, lb = (int(v) for v in rng.integers(1, 4097, size=2))
        a = rng.integers(-1000, 1001, size=la)
        b = rng.integers(-1000, 1001, size=lb)
        fast = ntt_convolve(a.astype(object), b.astype(object))
        assert np.array_equal(fast.astype(np.int64), np.convolve(a, b))
