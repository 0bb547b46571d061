"""Irreducible representations t^l of SU(2) by coefficient extraction.

Half-integer labels are carried doubled throughout: ``two_ell = 2 l`` and row
/ column indices ``m2 = 2 m`` run over -two_ell, -two_ell + 2, ..., two_ell.
Position ``p`` in a matrix corresponds to m = -l + p.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, sqrt

import numpy as np

from .errors import InvalidArgumentError
from .laurent import COMPLEX, LaurentPoly, coefficient, multiply, power

UNITARY_TOL = 1e-10
MARGIN = 1e-6
KERNEL_TOL = 1e-8


@dataclass(frozen=True)
class HalfInteger:
    doubled: int

    def __str__(self) -> str:
        return str(self.doubled // 2) if self.doubled % 2 == 0 else f"{self.doubled}/2"

    def __float__(self) -> float:
        return self.doubled / 2.0


def index_values(two_ell: int) -> list[int]:
    """Doubled indices m2 for m = -l, ..., l."""
    return list(range(-two_ell, two_ell + 1, 2))


def _check_label(two_ell: int) -> None:
    if not isinstance(two_ell, (int, np.integer)) or two_ell < 1:
        raise InvalidArgumentError(f"two_ell must be a positive integer, got {two_ell!r}")


@dataclass(frozen=True)
class RepMatrix:
    two_ell: int
    entries: np.ndarray

    def entry(self, m2: int, n2: int) -> complex:
        return complex(self.entries[(m2 + self.two_ell) // 2, (n2 + self.two_ell) // 2])

    def unitarity_residual(self) -> float:
        d = self.entries.shape[0]
        return float(np.max(np.abs(self.entries.conj().T @ self.entries - np.eye(d))))

    def to_json(self) -> str:
        rows = [[[float(z.real), float(z.imag)] for z in row] for row in self.entries]
        return json.dumps({"two_ell": self.two_ell, "entries": rows})


def _factorial_ratio_sqrt(two_ell: int, m2: int, n2: int) -> float:
    num = factorial((two_ell - m2) // 2) * factorial((two_ell + m2) // 2)
    den = factorial((two_ell - n2) // 2) * factorial((two_ell + n2) // 2)
    return sqrt(Fraction(num, den))


def _binomial_poly(a: int, const: int) -> LaurentPoly:
    """(z + const)**a with exact integer coefficients, const in {+1, -1}."""
    return LaurentPoly.from_coeffs([comb(a, i) * const ** (a - i) for i in range(a + 1)])


def tau_matrix(two_ell: int) -> RepMatrix:
    """t^l(g(1)): prefactor * i**(2l) / 2**l * [z**(l-m)] (z+1)**(l-n) (z-1)**(l+n)."""
    _check_label(two_ell)
    idx = index_values(two_ell)
    d = two_ell + 1
    scale = 1j**two_ell / sqrt(2.0) ** two_ell
    out = np.zeros((d, d), dtype=np.complex128)
    for col, n2 in enumerate(idx):
        prod = multiply(_binomial_poly((two_ell - n2) // 2, 1), _binomial_poly((two_ell + n2) // 2, -1))
        for row, m2 in enumerate(idx):
            c = int(coefficient(prod, (two_ell - m2) // 2))
            out[row, col] = scale * _factorial_ratio_sqrt(two_ell, m2, n2) * c
    return RepMatrix(two_ell, out)


def g_matrix(omega: complex) -> np.ndarray:
    """g(w) = (1/sqrt 2) [[i/w, i w], [i/w, -i w]], an element of SU(2) for |w| = 1."""
    wi = 1.0 / omega
    return np.array([[1j * wi, 1j * omega], [1j * wi, -1j * omega]]) / np.sqrt(2.0)


def G_matrix(omega: complex) -> np.ndarray:
    """G(w) = (1/sqrt 2) [[1, w], [1, -w]], an element of U(2) for |w| = 1."""
    return np.array([[1.0, omega], [1.0, -omega]], dtype=np.complex128) / np.sqrt(2.0)


def _check_unitary(g: np.ndarray) -> np.ndarray:
    g = np.asarray(g, dtype=np.complex128)
    if g.shape != (2, 2):
        raise InvalidArgumentError(f"expected a 2x2 matrix, got shape {g.shape}")
    if np.max(np.abs(g.conj().T @ g - np.eye(2))) > UNITARY_TOL:
        raise InvalidArgumentError("matrix is not unitary to 1e-10")
    return g


def rep_matrix(two_ell: int, g) -> RepMatrix:
    """t^l(g) with (alpha, beta) the top row of g and (gamma, delta) its bottom row."""
    _check_label(two_ell)
    g = _check_unitary(g)
    alpha, beta = g[0]
    gamma, delta = g[1]
    lin_a = LaurentPoly.from_coeffs([gamma, alpha], variant=COMPLEX)
    lin_b = LaurentPoly.from_coeffs([delta, beta], variant=COMPLEX)
    idx = index_values(two_ell)
    d = two_ell + 1
    out = np.zeros((d, d), dtype=np.complex128)
    for col, n2 in enumerate(idx):
        prod = multiply(power(lin_a, (two_ell - n2) // 2), power(lin_b, (two_ell + n2) // 2))
        for row, m2 in enumerate(idx):
            c = coefficient(prod, (two_ell - m2) // 2)
            out[row, col] = _factorial_ratio_sqrt(two_ell, m2, n2) * c
    return RepMatrix(two_ell, out)


def rep_matrix_batch(two_ell: int, mats: np.ndarray) -> np.ndarray:
    """t^l for a stack of 2x2 matrices, shape (S, 2, 2) -> (S, 2l+1, 2l+1).

    Uses the expanded binomial sum instead of polynomial products; no
    unitarity check is applied.
    """
    _check_label(two_ell)
    mats = np.asarray(mats, dtype=np.complex128)
    alpha, beta = mats[:, 0, 0], mats[:, 0, 1]
    gamma, delta = mats[:, 1, 0], mats[:, 1, 1]
    pw = {}
    for name, v in (("a", alpha), ("b", beta), ("c", gamma), ("d", delta)):
        p = np.ones((two_ell + 1,) + v.shape, dtype=np.complex128)
        for e in range(1, two_ell + 1):
            p[e] = p[e - 1] * v
        pw[name] = p
    idx = index_values(two_ell)
    d = two_ell + 1
    out = np.zeros((mats.shape[0], d, d), dtype=np.complex128)
    for col, n2 in enumerate(idx):
        a = (two_ell - n2) // 2
        b = (two_ell + n2) // 2
        for row, m2 in enumerate(idx):
            r = (two_ell - m2) // 2
            acc = np.zeros(mats.shape[0], dtype=np.complex128)
            for i in range(max(0, r - b), min(a, r) + 1):
                j = r - i
                acc += comb(a, i) * comb(b, j) * pw["a"][i] * pw["c"][a - i] * pw["b"][j] * pw["d"][b - j]
            out[:, row, col] = _factorial_ratio_sqrt(two_ell, m2, n2) * acc
    return out


def rep_of_g_omega(two_ell: int, omega: complex) -> RepMatrix:
    """t^l(g(w)) as tau^l with column n scaled by w**(2n)."""
    if abs(abs(omega) - 1.0) > 1e-12:
        raise InvalidArgumentError(f"omega must lie on the unit circle, |omega|={abs(omega)!r}")
    tau = tau_matrix(two_ell).entries
    phases = np.array([omega**n2 for n2 in index_values(two_ell)])
    return RepMatrix(two_ell, tau * phases[None, :])


def random_su2(rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-random SU(2) matrices from normalized Gaussian quaternions."""
    shape = (1 if size is None else size, 4)
    q = rng.standard_normal(shape)
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    a = q[:, 0] + 1j * q[:, 1]
    b = q[:, 2] + 1j * q[:, 3]
    out = np.empty((shape[0], 2, 2), dtype=np.complex128)
    out[:, 0, 0] = a
    out[:, 0, 1] = b
    out[:, 1, 0] = -b.conj()
    out[:, 1, 1] = a.conj()
    return out[0] if size is None else out


# --------------------------------------------------------------------------
# structural facts about tau used by the spectral argument
# --------------------------------------------------------------------------

@dataclass
class PropertyReport:
    two_ell: int
    min_singular_value: float
    tau_center: float | None
    tau_low_corner: float
    tau_high_corner: float
    pattern_min_singular: dict = field(default_factory=dict)

    def checks(self) -> dict[str, bool]:
        out = {
            "invertible": self.min_singular_value > KERNEL_TOL,
            "low_corner_below_one": self.tau_low_corner < 1.0 - MARGIN,
            "high_corner_below_one": self.tau_high_corner < 1.0 - MARGIN,
        }
        if self.tau_center is not None:
            out["center_below_one"] = self.tau_center < 1.0 - MARGIN
        for name, s in self.pattern_min_singular.items():
            out[f"pattern_{name}_trivial_kernel"] = s > KERNEL_TOL
        return out

    @property
    def ok(self) -> bool:
        return all(self.checks().values())

    def as_dict(self) -> dict:
        return {
            "two_ell": self.two_ell,
            "min_singular_value": self.min_singular_value,
            "tau_center": self.tau_center,
            "tau_low_corner": self.tau_low_corner,
            "tau_high_corner": self.tau_high_corner,
            "pattern_min_singular": dict(self.pattern_min_singular),
            "checks": self.checks(),
        }


def constrained_patterns(two_ell: int) -> dict[str, tuple[list[int], list[int]]]:
    """The four (forced-zero rows, beta-support columns) position sets.

    beta lives on the negative-index or positive-index half (the middle
    index excluded for integer l); gamma lives on even or odd positions, so
    the image must vanish on the complementary parity class.
    """
    d = two_ell + 1
    half = two_ell // 2 if two_ell % 2 == 0 else d // 2
    neg = list(range(half))
    pos = list(range(d - half, d))
    even_rows = [p for p in range(d) if p % 2 == 0]
    odd_rows = [p for p in range(d) if p % 2 == 1]
    return {
        "neg_even": (odd_rows, neg),
        "neg_odd": (even_rows, neg),
        "pos_even": (odd_rows, pos),
        "pos_odd": (even_rows, pos),
    }


def verify_propositions(two_ell: int, tau: np.ndarray | None = None) -> PropertyReport:
    """Invertibility, corner/center moduli and trivial-kernel checks for tau^l."""
    _check_label(two_ell)
    if tau is None:
        tau = tau_matrix(two_ell).entries
    sv = np.linalg.svd(tau, compute_uv=False)
    centre = abs(tau[two_ell // 2, two_ell // 2]) if two_ell % 2 == 0 else None
    patterns = {}
    for name, (rows, cols) in constrained_patterns(two_ell).items():
        sub = tau[np.ix_(rows, cols)]
        patterns[name] = float(np.linalg.svd(sub, compute_uv=False).min())
    return PropertyReport(
        two_ell=two_ell,
        min_singular_value=float(sv.min()),
        tau_center=None if centre is None else float(centre),
        tau_low_corner=float(abs(tau[0, 0])),
        tau_high_corner=float(abs(tau[-1, -1])),
        pattern_min_singular=patterns,
    )
