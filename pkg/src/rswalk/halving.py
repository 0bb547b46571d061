"""Halving operators S_l, S_{l,lambda}, their spectra and the Weyl sums they drive.

Notation, with labels doubled as in :mod:`rswalk.su2`: a basis vector of
(P_{l,lambda})**(2l+1) is a pair (h2, j) meaning the polynomial vector with
``w**j`` in coordinate h and zeros elsewhere.  Applying ``w**(lambda/2) T(w)``
sends it to ``tau[:, h] * w**e`` with ``e = (lambda + h2)/2 + j``; halving keeps
it (as exponent e/2) only when e is even.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericalFailureError, ResourceLimitError
from .laurent import COMPLEX, LaurentPoly, constant_term, halve, multiply
from .su2 import index_values, tau_matrix

RADIUS_CEILING = 1.0 + 1e-9
SYMBOLIC_BUDGET = 1 << 18


@dataclass(frozen=True)
class HalvingOperator:
    two_ell: int
    lam: int | None
    matrix: np.ndarray
    index_map: tuple[tuple[int, int], ...]
    exponents: tuple[int, int]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def basis_index(self, h2: int, j: int) -> int:
        lo, hi = self.exponents
        width = hi - lo + 1
        return ((h2 + self.two_ell) // 2) * width + (j - lo)


def exponent_span(two_ell: int, lam: int) -> tuple[int, int]:
    """Integer exponent range [lambda/2 - l + 1, lambda/2 + l - 1]."""
    return (lam - two_ell) // 2 + 1, (lam + two_ell) // 2 - 1


def _assemble(two_ell: int, lam: int, tau: np.ndarray) -> HalvingOperator:
    lo, hi = exponent_span(two_ell, lam)
    idx = index_values(two_ell)
    width = hi - lo + 1
    dim = len(idx) * width
    mat = np.zeros((dim, dim), dtype=np.complex128)
    index_map = []
    for hp, h2 in enumerate(idx):
        for j in range(lo, hi + 1):
            index_map.append((h2, j))
            e = (lam + h2) // 2 + j
            if e % 2:
                continue
            target = e // 2
            if not lo <= target <= hi:  # pragma: no cover - excluded by the span algebra
                raise AssertionError("halving left the invariant span")
            col = hp * width + (j - lo)
            for mp in range(len(idx)):
                mat[mp * width + (target - lo), col] = tau[mp, hp]
    return HalvingOperator(two_ell, lam, mat, tuple(index_map), (lo, hi))


def build_S(two_ell: int, tau: np.ndarray | None = None) -> HalvingOperator:
    """S_l on (P_l)**(2l+1) for integer l >= 1 (two_ell even)."""
    if not isinstance(two_ell, (int, np.integer)) or two_ell < 2 or two_ell % 2:
        raise InvalidArgumentError(f"S_l needs an integer label l >= 1 (two_ell even), got {two_ell!r}")
    if tau is None:
        tau = tau_matrix(two_ell).entries
    op = _assemble(two_ell, 0, tau)
    return HalvingOperator(op.two_ell, None, op.matrix, op.index_map, op.exponents)


def is_interior(two_ell: int, lam: int) -> bool:
    return abs(lam) < two_ell


def parity_ok(two_ell: int, lam: int) -> bool:
    return (two_ell + lam) % 2 == 0


def build_S_lambda(two_ell: int, lam: int, tau: np.ndarray | None = None) -> HalvingOperator:
    """S_{l,lambda} on (P_{l,lambda})**(2l+1); only defined in the interior case."""
    if not isinstance(two_ell, (int, np.integer)) or two_ell < 1:
        raise InvalidArgumentError(f"two_ell must be a positive integer, got {two_ell!r}")
    if not parity_ok(two_ell, lam):
        raise InvalidArgumentError(
            f"lambda={lam} and two_ell={two_ell} have mismatched parity; the moment is "
            "identically zero (see independence_moment)"
        )
    if not is_interior(two_ell, lam):
        raise InvalidArgumentError(
            f"0 is not interior to [lambda/2 - l, lambda/2 + l] for lambda={lam}, two_ell={two_ell}; "
            "use independence_moment's closed forms"
        )
    if tau is None:
        tau = tau_matrix(two_ell).entries
    return _assemble(two_ell, lam, tau)


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    spectral_radius: float
    margin: float

    def to_json(self) -> str:
        eig = [[float(z.real), float(z.imag)] for z in self.eigenvalues]
        return json.dumps(
            {"spectral_radius": self.spectral_radius, "margin": self.margin, "eigenvalues": eig}
        )


def spectral_radius(op: HalvingOperator) -> SpectrumReport:
    """Full spectrum by dense nonsymmetric eigen-decomposition."""
    try:
        eig = np.linalg.eigvals(op.matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            f"eigensolver failed for two_ell={op.two_ell}, lambda={op.lam}, dim={op.dim}: {exc}"
        ) from exc
    if not np.all(np.isfinite(eig)):
        raise NumericalFailureError(f"non-finite eigenvalues for two_ell={op.two_ell}, lambda={op.lam}")
    rho = float(np.max(np.abs(eig))) if eig.shape[0] else 0.0
    order = np.lexsort((eig.imag, -np.abs(eig)))
    return SpectrumReport(eig[order], rho, 1.0 - rho)


def spectrum_table_csv(rows: list[tuple[HalvingOperator, SpectrumReport]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["two_ell", "lambda", "dim", "spectral_radius", "margin"])
    for op, rep in rows:
        lam = "" if op.lam is None else op.lam
        writer.writerow([op.two_ell, lam, op.dim, repr(rep.spectral_radius), repr(rep.margin)])
    return buf.getvalue()


def interior_parameters(max_two_ell: int) -> list[tuple[int, int]]:
    """All parity-valid (two_ell, lambda) with |lambda| <= two_ell - 1."""
    out = []
    for two_ell in range(1, max_two_ell + 1):
        for lam in range(-(two_ell - 1), two_ell):
            if parity_ok(two_ell, lam):
                out.append((two_ell, lam))
    return out


# --------------------------------------------------------------------------
# expectations of lacunary products of representation matrices
# --------------------------------------------------------------------------

def _moment_via_operator(op: HalvingOperator, k: int) -> np.ndarray:
    d = op.two_ell + 1
    cols = [op.basis_index(h2, 0) for h2 in index_values(op.two_ell)]
    vec = np.zeros((op.dim, d), dtype=np.complex128)
    vec[cols, np.arange(d)] = 1.0
    for _ in range(k + 1):
        vec = op.matrix @ vec
    return vec[cols, :]


def expected_rep(two_ell: int, k: int, tau: np.ndarray | None = None) -> np.ndarray:
    """E t^l(g(w**(2**k))) ... t^l(g(w)) for uniform w on the circle."""
    if k < 0:
        raise InvalidArgumentError(f"k must be non-negative, got {k}")
    d = two_ell + 1
    if two_ell % 2:
        return np.zeros((d, d), dtype=np.complex128)
    return _moment_via_operator(build_S(two_ell, tau), k)


def independence_moment(two_ell: int, lam: int, k: int, tau: np.ndarray | None = None) -> np.ndarray:
    """E w**(lambda 2**k) t^l(g(w**(2**k))) ... w**lambda t^l(g(w))."""
    if k < 0:
        raise InvalidArgumentError(f"k must be non-negative, got {k}")
    d = two_ell + 1
    zero = np.zeros((d, d), dtype=np.complex128)
    if not parity_ok(two_ell, lam) or abs(lam) > two_ell:
        return zero
    if tau is None:
        tau = tau_matrix(two_ell).entries
    if lam == two_ell:
        out = zero.copy()
        out[:, 0] = tau[0, 0] ** k * tau[:, 0]
        return out
    if lam == -two_ell:
        out = zero.copy()
        out[:, -1] = tau[-1, -1] ** k * tau[:, -1]
        return out
    return _moment_via_operator(build_S_lambda(two_ell, lam, tau), k)


# --------------------------------------------------------------------------
# brute-force symbolic products
# --------------------------------------------------------------------------

def _monomial_matrix(tau: np.ndarray, exponents: list[int]) -> list[list[LaurentPoly]]:
    d = tau.shape[0]
    return [
        [LaurentPoly.monomial(exponents[c], complex(tau[r, c]), variant=COMPLEX) for c in range(d)]
        for r in range(d)
    ]


def _poly_matmul(a, b):
    d = len(a)
    zero = LaurentPoly.zero(COMPLEX)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = zero
            for t in range(d):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + multiply(a[i][t], b[t][j])
            row.append(acc)
        out.append(row)
    return out


@dataclass(frozen=True)
class CrossCheck:
    residual: float
    support_ok: bool
    brute_force: np.ndarray
    fast: np.ndarray


def symbolic_product(two_ell: int, lam: int, k: int, tau: np.ndarray | None = None):
    """Entries of w**(lambda 2**k) t(g(w**(2**k))) ... w**lambda t(g(w)) as Laurent polynomials in w."""
    d = two_ell + 1
    span = ((1 << (k + 1)) - 1) * (two_ell + abs(lam)) * 2 + 1
    if d * d * span > SYMBOLIC_BUDGET:
        raise ResourceLimitError(f"symbolic product would hold {d * d * span} terms")
    if tau is None:
        tau = tau_matrix(two_ell).entries
    idx = index_values(two_ell)
    prod = None
    for j in range(k + 1):
        factor = _monomial_matrix(tau, [(lam + n2) << j for n2 in idx])
        prod = factor if prod is None else _poly_matmul(factor, prod)
    return prod


def cross_check_symbolic(two_ell: int, lam: int, k: int) -> CrossCheck:
    """Compare constant terms of the symbolic product with :func:`independence_moment`."""
    prod = symbolic_product(two_ell, lam, k)
    d = two_ell + 1
    brute = np.array([[complex(constant_term(prod[r][c])) for c in range(d)] for r in range(d)])
    fast = independence_moment(two_ell, lam, k)
    scale = (1 << (k + 1)) - 1
    lo, hi = scale * (lam - two_ell), scale * (lam + two_ell)
    support_ok = all(
        p.is_zero() or (lo <= p.low and p.high <= hi) for row in prod for p in row
    )
    return CrossCheck(float(np.max(np.abs(brute - fast))), support_ok, brute, fast)


def apply_T(two_ell: int, vec: list[LaurentPoly], lam: int = 0, tau: np.ndarray | None = None) -> list[LaurentPoly]:
    """w**(lambda/2) T(w) A(w) for a vector A of complex Laurent polynomials."""
    if tau is None:
        tau = tau_matrix(two_ell).entries
    idx = index_values(two_ell)
    shifted = [
        multiply(LaurentPoly.monomial((lam + h2) // 2, 1.0 + 0j, variant=COMPLEX), a)
        for h2, a in zip(idx, vec)
    ]
    out = []
    for r in range(len(idx)):
        acc = LaurentPoly.zero(COMPLEX)
        for c, s in enumerate(shifted):
            acc = acc + s * complex(tau[r, c])
        out.append(acc)
    return out


def apply_S_symbolic(two_ell: int, vec: list[LaurentPoly], lam: int = 0) -> list[LaurentPoly]:
    return [halve(p) for p in apply_T(two_ell, vec, lam)]
