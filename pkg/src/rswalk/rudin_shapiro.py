"""Rudin-Shapiro pairs and their exact polynomial identities and moments."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .laurent import LaurentPoly, constant_term, multiply, power, reverse

MAX_K = 24
# largest number of terms any moment product may reach
TERM_BUDGET = 1 << 21


@dataclass(frozen=True)
class RudinShapiroPair:
    k: int
    p_coeffs: np.ndarray
    q_coeffs: np.ndarray

    @property
    def p(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self.p_coeffs.tolist())

    @property
    def q(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self.q_coeffs.tolist())


def generate(k: int, max_k: int = MAX_K) -> RudinShapiroPair:
    """Coefficients of P_k, Q_k as int8 arrays of length 2**k."""
    if k < 0:
        raise InvalidArgumentError(f"k must be non-negative, got {k}")
    if k > max_k:
        raise ResourceLimitError(f"k={k} exceeds the generation bound {max_k}")
    p = np.ones(1, dtype=np.int8)
    q = np.ones(1, dtype=np.int8)
    for _ in range(k):
        p, q = np.concatenate([p, q]), np.concatenate([p, -q])
    p.flags.writeable = False
    q.flags.writeable = False
    return RudinShapiroPair(k, p, q)


def _autocorrelation(a: LaurentPoly) -> LaurentPoly:
    return multiply(a, reverse(a))


def parseval_identity_check(k: int) -> tuple[bool, LaurentPoly]:
    """P(z)P(1/z) + Q(z)Q(1/z) - 2**(k+1), which must vanish identically."""
    pair = generate(k)
    residual = _autocorrelation(pair.p) + _autocorrelation(pair.q) - (1 << (k + 1))
    return residual.is_zero(), residual


def value_at_minus_one(coeffs: np.ndarray) -> int:
    signs = np.where(np.arange(coeffs.shape[0]) % 2 == 0, 1, -1)
    return int(np.dot(coeffs.astype(np.int64), signs))


def alt_recursion_check(k: int) -> bool:
    """P_{k+2} = (1 - z^s) P_{k+1} + 2 z^s P_k with s = 2**(k+1); also P_j(-1) = 0 for odd j <= k+2."""
    if k < 0:
        raise InvalidArgumentError(f"k must be non-negative, got {k}")
    p_k = generate(k).p
    p_k1 = generate(k + 1).p
    p_k2 = generate(k + 2).p
    s = 1 << (k + 1)
    zs = LaurentPoly.monomial(s)
    rhs = multiply(1 - zs, p_k1) + multiply(2 * zs, p_k)
    if rhs != p_k2:
        return False
    return all(value_at_minus_one(generate(j).p_coeffs) == 0 for j in range(1, k + 3, 2))


@dataclass(frozen=True)
class ExactMoment:
    """Normalized moment ``rational * 2**(-1/2 if half_power else 0)``.

    Even total degree n + m gives a plain rational; odd total degree leaves a
    single factor of 1/sqrt(2) which is carried symbolically.
    """

    k: int
    n: int
    m: int
    constant_term: int
    rational: Fraction
    half_power: bool = False

    @property
    def value(self) -> Fraction:
        if self.half_power:
            raise ValueError("moment is irrational; use rational and half_power")
        return self.rational

    def __float__(self) -> float:
        return float(self.rational) / (math.sqrt(2.0) if self.half_power else 1.0)

    def as_string(self) -> str:
        text = f"{self.rational.numerator}/{self.rational.denominator}"
        return text + "/sqrt(2)" if self.half_power else text


def _check_budget(terms: int, budget: int) -> None:
    if terms > budget:
        raise ResourceLimitError(f"product would hold {terms} terms, budget is {budget}")


def exact_even_moment(k: int, n: int, budget: int = TERM_BUDGET) -> ExactMoment:
    """E|P_k(w) / sqrt(2**(k+1))|**(2n) computed as an exact constant term."""
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    return exact_mixed_moment(k, n, n, budget)


def exact_mixed_moment(k: int, n: int, m: int, budget: int = TERM_BUDGET) -> ExactMoment:
    """E conj(P_k)^n P_k^m, normalized by sqrt(2**(k+1))**(n+m)."""
    if n < 0 or m < 0:
        raise InvalidArgumentError(f"moment orders must be non-negative, got n={n}, m={m}")
    pair = generate(k)
    deg = (1 << k) - 1
    _check_budget(max(n, m) * (2 * deg + 1), budget)
    p = pair.p
    common = min(n, m)
    poly = power(_autocorrelation(p), common) if common else LaurentPoly.from_coeffs([1])
    extra = n - common if n > m else m - common
    if extra:
        side = reverse(p) if n > m else p
        poly = multiply(poly, power(side, extra))
    ct = int(constant_term(poly))
    total = (n + m) * (k + 1)
    rational = Fraction(ct, 1 << (total // 2))
    return ExactMoment(k, n, m, ct, rational, half_power=bool(total % 2))


def moment_closed_form_n2(k: int) -> Fraction:
    """Closed form of the fourth moment: (4**(k+1) - (-2)**k) / (3 * 4**(k+1))."""
    four = 4 ** (k + 1)
    return Fraction(four - (-2) ** k, 3 * four)

