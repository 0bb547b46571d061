"""Laurent polynomials with exact (integer, rational) or complex-float coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Number

import numpy as np

from .convolution import ntt_convolve, schoolbook_convolve
from .errors import InvalidArgumentError, VariantMismatchError

INT = "int"
RATIONAL = "rational"
COMPLEX = "complex"
VARIANTS = (INT, RATIONAL, COMPLEX)

# operand length (shorter factor) at which exact products switch to the transform path
FAST_THRESHOLD = 64


def _infer_variant(values) -> str:
    variant = INT
    for v in values:
        if isinstance(v, (bool, int, np.integer)):
            continue
        if isinstance(v, Fraction):
            variant = RATIONAL if variant == INT else variant
            continue
        if isinstance(v, (float, complex, np.floating, np.complexfloating)):
            return COMPLEX
        raise InvalidArgumentError(f"unsupported coefficient type {type(v).__name__}")
    return variant


def _as_array(values, variant: str) -> np.ndarray:
    if variant == COMPLEX:
        return np.asarray(values, dtype=np.complex128).reshape(-1)
    out = np.empty(len(values), dtype=object)
    if variant == INT:
        out[:] = [int(v) for v in values]
    else:
        out[:] = [Fraction(v) for v in values]
    return out


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """Sum of ``coeffs[i] * z**(low + i)``, kept in canonical (trimmed) form.

    Build instances with :meth:`from_coeffs`; the constructor assumes its
    arguments are already canonical.
    """

    low: int
    coeffs: np.ndarray
    variant: str

    @classmethod
    def from_coeffs(cls, coeffs, low: int = 0, variant: str | None = None) -> "LaurentPoly":
        values = list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs
        if variant is None:
            variant = _infer_variant(values) if len(values) else INT
        if variant not in VARIANTS:
            raise InvalidArgumentError(f"unknown coefficient variant {variant!r}")
        return cls._canonical(int(low), _as_array(values, variant), variant)

    @classmethod
    def _canonical(cls, low: int, arr: np.ndarray, variant: str) -> "LaurentPoly":
        nz = np.flatnonzero(arr != 0)
        if nz.shape[0] == 0:
            arr = arr[:0].copy()
            low = 0
        else:
            first, last = int(nz[0]), int(nz[-1])
            arr = arr[first : last + 1].copy()
            low += first
        arr.flags.writeable = False
        return cls(low, arr, variant)

    @classmethod
    def zero(cls, variant: str = INT) -> "LaurentPoly":
        return cls._canonical(0, _as_array([], variant), variant)

    @classmethod
    def monomial(cls, exponent: int, coeff=1, variant: str | None = None) -> "LaurentPoly":
        return cls.from_coeffs([coeff], low=exponent, variant=variant)

    # -- basic properties -------------------------------------------------

    def __len__(self) -> int:
        return int(self.coeffs.shape[0])

    @property
    def high(self) -> int:
        """Largest stored exponent (``low - 1`` for the zero polynomial)."""
        return self.low + len(self) - 1

    def is_zero(self) -> bool:
        return len(self) == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = LaurentPoly.from_coeffs([other], variant=self.variant)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.low != other.low or len(self) != len(other):
            return False
        return bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash((self.low, tuple(self.coeffs.tolist())))

    def __repr__(self) -> str:
        if self.is_zero():
            return "LaurentPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                terms.append(f"({c})*z^{self.low + i}")
        return "LaurentPoly(" + " + ".join(terms) + ")"

    def to_complex(self) -> "LaurentPoly":
        if self.variant == COMPLEX:
            return self
        vals = np.array([complex(v) for v in self.coeffs], dtype=np.complex128)
        return LaurentPoly._canonical(self.low, vals, COMPLEX)

    def to_rational(self) -> "LaurentPoly":
        if self.variant == COMPLEX:
            raise VariantMismatchError("cannot convert complex coefficients to rationals")
        return LaurentPoly.from_coeffs(self.coeffs, self.low, RATIONAL)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variant != self.variant:
                raise VariantMismatchError(f"{self.variant} vs {other.variant} coefficients")
            return other
        if isinstance(other, (Number, Fraction)):
            return LaurentPoly.from_coeffs([other], variant=self.variant)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self.low, other.low)
        high = max(self.high, other.high)
        out = np.zeros(high - low + 1, dtype=self.coeffs.dtype)
        if out.dtype == object:
            out[:] = 0 if self.variant == INT else Fraction(0)
        out[self.low - low : self.low - low + len(self)] += self.coeffs
        out[other.low - low : other.low - low + len(other)] += other.coeffs
        return LaurentPoly._canonical(low, out, self.variant)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._canonical(self.low, -self.coeffs, self.variant)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return multiply(self, other)
        if isinstance(other, (Number, Fraction)):
            if self.variant == INT and not isinstance(other, (int, np.integer)):
                raise VariantMismatchError("integer polynomial scaled by non-integer")
            return LaurentPoly._canonical(self.low, self.coeffs * other, self.variant)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        return power(self, n)

    def __call__(self, z):
        """Evaluate at a point (or array of points) away from the origin."""
        z = np.asarray(z, dtype=np.complex128)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + complex(c)
        return acc * z**self.low if len(self) else acc


def _check_same(a: LaurentPoly, b: LaurentPoly) -> None:
    if a.variant != b.variant:
        raise VariantMismatchError(f"{a.variant} vs {b.variant} coefficients")


def _int_convolve(x: np.ndarray, y: np.ndarray, threshold: int) -> np.ndarray:
    if min(x.shape[0], y.shape[0]) < threshold:
        return schoolbook_convolve(x, y)
    return ntt_convolve(x, y)


def multiply(a: LaurentPoly, b: LaurentPoly, threshold: int = FAST_THRESHOLD) -> LaurentPoly:
    """Exact product for integer/rational variants, np.convolve for complex."""
    _check_same(a, b)
    if a.is_zero() or b.is_zero():
        return LaurentPoly.zero(a.variant)
    low = a.low + b.low
    if a.variant == COMPLEX:
        return LaurentPoly._canonical(low, np.convolve(a.coeffs, b.coeffs), COMPLEX)
    if a.variant == INT:
        y = a.coeffs if a is b else b.coeffs
        return LaurentPoly._canonical(low, _int_convolve(a.coeffs, y, threshold), INT)
    da = lcm(*(c.denominator for c in a.coeffs))
    db = lcm(*(c.denominator for c in b.coeffs))
    xa = np.array([int(c * da) for c in a.coeffs], dtype=object)
    xb = np.array([int(c * db) for c in b.coeffs], dtype=object)
    prod = _int_convolve(xa, xb, threshold)
    scale = da * db
    out = np.empty(prod.shape[0], dtype=object)
    out[:] = [Fraction(int(v), scale) for v in prod]
    return LaurentPoly._canonical(low, out, RATIONAL)


def power(a: LaurentPoly, n: int) -> LaurentPoly:
    """a**n by repeated squaring (O(log n) multiplications)."""
    if n < 0:
        raise InvalidArgumentError("negative powers are not supported")
    result = LaurentPoly.from_coeffs([1], variant=a.variant)
    base = a
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def reverse(a: LaurentPoly) -> LaurentPoly:
    """Substitute z -> 1/z."""
    if a.is_zero():
        return a
    return LaurentPoly._canonical(-a.high, a.coeffs[::-1], a.variant)


def substitute_power(a: LaurentPoly, s: int) -> LaurentPoly:
    """Substitute z -> z**s for a positive integer s."""
    if not isinstance(s, (int, np.integer)) or s < 1:
        raise InvalidArgumentError(f"substitution power must be a positive integer, got {s!r}")
    if s == 1 or a.is_zero():
        return a
    out = np.zeros((len(a) - 1) * s + 1, dtype=a.coeffs.dtype)
    if out.dtype == object:
        out[:] = 0
    out[::s] = a.coeffs
    return LaurentPoly._canonical(a.low * s, out, a.variant)


def coefficient(a: LaurentPoly, j: int):
    """Coefficient of z**j (zero outside the stored span)."""
    i = j - a.low
    if 0 <= i < len(a):
        return a.coeffs[i]
    if a.variant == COMPLEX:
        return 0j
    return 0 if a.variant == INT else Fraction(0)


def constant_term(a: LaurentPoly):
    return coefficient(a, 0)


def halve(a: LaurentPoly) -> LaurentPoly:
    """Keep the even exponents 2j of ``a`` and relabel them as j."""
    if a.is_zero():
        return a
    start = a.low % 2  # offset of the first even exponent
    return LaurentPoly._canonical((a.low + start) // 2, a.coeffs[start::2], a.variant)


def split_parity(a: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """(even part, odd part) with exponents left in place."""
    if a.is_zero():
        return a, a
    even = a.coeffs.copy()
    odd = a.coeffs.copy()
    parity = (np.arange(len(a)) + a.low) % 2
    zero = 0j if a.variant == COMPLEX else 0
    even[parity == 1] = zero
    odd[parity == 0] = zero
    return (
        LaurentPoly._canonical(a.low, even, a.variant),
        LaurentPoly._canonical(a.low, odd, a.variant),
    )
