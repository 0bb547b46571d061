"""Evaluation of P_k on roots of unity and the empirical distribution reports."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .rudin_shapiro import RudinShapiroPair, generate
from .su2 import g_matrix

MAX_GRID = 1 << 22


@dataclass(frozen=True)
class EvaluationGrid:
    k: int
    N: int
    values: np.ndarray

    @property
    def normalized(self) -> np.ndarray:
        return self.values / np.sqrt(2.0 ** (self.k + 1))

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.N) / self.N)


@dataclass
class DistributionReport:
    k: int
    N: int
    ks_statistic: float = float("nan")
    bin_edges: np.ndarray | None = None
    bin_masses: np.ndarray | None = None
    disc_grid: np.ndarray | None = None
    disc_expected: np.ndarray | None = None
    max_cell_deviation: float = float("nan")
    in_disc_fraction: float = float("nan")
    min_modulus: float = float("nan")
    max_modulus: float = float("nan")
    extra: dict = field(default_factory=dict)

    def metadata(self) -> dict:
        out = {
            "k": self.k,
            "n_points": self.N,
            "ks_statistic": self.ks_statistic,
            "max_cell_deviation": self.max_cell_deviation,
            "in_disc_fraction": self.in_disc_fraction,
            "min_modulus": self.min_modulus,
            "max_modulus": self.max_modulus,
        }
        out.update(self.extra)
        return {k: v for k, v in out.items() if not (isinstance(v, float) and np.isnan(v))}

    def histogram_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["bin_low", "bin_high", "mass"])
        if self.bin_masses is not None:
            for lo, hi, mass in zip(self.bin_edges[:-1], self.bin_edges[1:], self.bin_masses):
                writer.writerow([repr(float(lo)), repr(float(hi)), repr(float(mass))])
        return buf.getvalue()


def _check_grid(k: int, N: int) -> None:
    if N < 1 or N & (N - 1):
        raise InvalidArgumentError(f"N must be a power of two, got {N}")
    if N < (1 << k):
        raise InvalidArgumentError(f"N={N} does not resolve a polynomial of length 2**{k}")
    if N > MAX_GRID:
        raise InvalidArgumentError(f"N={N} exceeds the grid limit {MAX_GRID}")


def eval_at_roots(pair: RudinShapiroPair, N: int, which: str = "p") -> EvaluationGrid:
    """values[j] = sum_i a_i exp(2 pi i i j / N) via a zero-padded FFT."""
    _check_grid(pair.k, N)
    coeffs = pair.p_coeffs if which == "p" else pair.q_coeffs
    # ifft carries the +i sign and a 1/N factor
    values = np.fft.ifft(coeffs.astype(np.float64), n=N) * N
    return EvaluationGrid(pair.k, N, values)


def ks_uniform(samples: np.ndarray) -> float:
    """Kolmogorov-Smirnov distance between the empirical CDF and uniform on [0, 1]."""
    x = np.sort(np.clip(samples, 0.0, 1.0))
    n = x.shape[0]
    i = np.arange(1, n + 1, dtype=np.float64)
    return float(max(np.max(i / n - x), np.max(x - (i - 1) / n)))


def saffari_report(k: int, N: int, bins: int = 16) -> DistributionReport:
    if bins < 2:
        raise InvalidArgumentError(f"bins must be at least 2, got {bins}")
    grid = eval_at_roots(generate(k), N)
    sq = np.abs(grid.normalized) ** 2
    edges = np.linspace(0.0, 1.0, bins + 1)
    counts, _ = np.histogram(np.clip(sq, 0.0, 1.0), bins=edges)
    mod = np.sqrt(sq)
    return DistributionReport(
        k=k,
        N=N,
        ks_statistic=ks_uniform(sq),
        bin_edges=edges,
        bin_masses=counts / N,
        min_modulus=float(mod.min()),
        max_modulus=float(mod.max()),
    )


# --------------------------------------------------------------------------
# exact area of an axis-aligned rectangle clipped to the unit disc
# --------------------------------------------------------------------------

def _arc_integral(x):
    """Integral of sqrt(1 - u**2) from -1 to x (x clipped to [-1, 1])."""
    x = np.clip(x, -1.0, 1.0)
    return 0.5 * (x * np.sqrt(1.0 - x * x) + np.arcsin(x)) + np.pi / 4.0


def _lower_left_area(x, y):
    """Area of {(u, v) in the disc : u <= x, v <= y}."""
    x = np.clip(np.asarray(x, dtype=np.float64), -1.0, 1.0)
    y = np.clip(np.asarray(y, dtype=np.float64), -1.0, 1.0)
    c = np.sqrt(1.0 - y * y)  # half-width of the chord at height y
    lo = np.minimum(x, -c)
    mid = np.clip(x, -c, c)
    # y >= 0: full lower half plus the part of the upper half below the line
    upper = (
        2.0 * _arc_integral(lo)
        + (mid + c) * y
        + _arc_integral(mid) - _arc_integral(-c)
        + np.where(x > c, 2.0 * (_arc_integral(x) - _arc_integral(c)), 0.0)
    )
    # y < 0: only the cap under the chord, integrand y + sqrt(1 - u**2) on |u| < c
    lower = (mid + c) * y + _arc_integral(mid) - _arc_integral(-c)
    return np.where(y >= 0.0, upper, lower)


def rectangle_disc_area(x0, x1, y0, y1):
    return (
        _lower_left_area(x1, y1)
        - _lower_left_area(x0, y1)
        - _lower_left_area(x1, y0)
        + _lower_left_area(x0, y0)
    )


def disc_cell_areas(grid_size: int) -> np.ndarray:
    """areas[ix, iy] of the cells of a grid_size x grid_size partition of [-1, 1]**2, clipped to the disc."""
    edges = np.linspace(-1.0, 1.0, grid_size + 1)
    x0, y0 = np.meshgrid(edges[:-1], edges[:-1], indexing="ij")
    x1, y1 = np.meshgrid(edges[1:], edges[1:], indexing="ij")
    return np.maximum(rectangle_disc_area(x0, x1, y0, y1), 0.0)


def montgomery_report(k: int, N: int, grid_size: int = 8) -> DistributionReport:
    if grid_size < 2:
        raise InvalidArgumentError(f"grid_size must be at least 2, got {grid_size}")
    grid = eval_at_roots(generate(k), N)
    w = grid.normalized
    ix = np.clip(np.floor((w.real + 1.0) * 0.5 * grid_size).astype(np.int64), 0, grid_size - 1)
    iy = np.clip(np.floor((w.imag + 1.0) * 0.5 * grid_size).astype(np.int64), 0, grid_size - 1)
    counts = np.bincount(ix * grid_size + iy, minlength=grid_size * grid_size)
    freq = counts.reshape(grid_size, grid_size) / N
    expected = disc_cell_areas(grid_size) / np.pi
    mod = np.abs(w)
    return DistributionReport(
        k=k,
        N=N,
        disc_grid=freq,
        disc_expected=expected,
        max_cell_deviation=float(np.max(np.abs(freq - expected))),
        in_disc_fraction=float(np.mean(mod <= 1.0 + 1e-9)),
        min_modulus=float(mod.min()),
        max_modulus=float(mod.max()),
        extra={"grid_size": grid_size},
    )


def min_modulus_report(k: int, N: int) -> tuple[float, complex]:
    """(min_j |P_k(w_j)| / sqrt(2**(k+1)), w_argmin) over the N-th roots of unity."""
    grid = eval_at_roots(generate(k), N)
    mod = np.abs(grid.normalized)
    j = int(np.argmin(mod))
    return float(mod[j]), complex(np.exp(2j * np.pi * j / N))


def link_sides(k: int, theta: float, literal: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the matrix-product identity for P_k, Q_k at z = exp(i theta).

    With g(z) = (i/sqrt 2) z**-1 [[1, z**2], [1, -z**2]] the product
    g(z**(2**k)) ... g(z) e1 equals
    i**(k+1) z**-(2**(k+1) - 1) (P_k(z**4), Q_k(z**4)) / sqrt(2**(k+1)).
    ``literal=True`` instead evaluates the form with z**(2**(k+1) - 1) and
    P_k(z**2), which only agrees on a finite set of z; it is kept as a
    diagnostic.
    """
    pair = generate(k)
    span = (1 << (k + 1)) - 1
    if literal:
        powers = np.exp(1j * 2.0 * theta * np.arange(1 << k))
        pref = 1j ** (k + 1) * np.exp(1j * span * theta)
    else:
        powers = np.exp(1j * 4.0 * theta * np.arange(1 << k))
        pref = 1j ** (k + 1) * np.exp(-1j * span * theta)
    scale = np.sqrt(2.0 ** (k + 1))
    left = pref * np.array([powers @ pair.p_coeffs, powers @ pair.q_coeffs]) / scale
    vec = np.array([1.0 + 0j, 0.0])
    for j in range(k + 1):
        vec = g_matrix(np.exp(1j * (1 << j) * theta)) @ vec
    return left, vec


def link_check(k: int, sample_count: int = 1000, seed: int = 0, literal: bool = False) -> tuple[float, float]:
    """(max residual between the two sides, max deviation of |right side| from 1)."""
    if not 0 <= k <= 12:
        raise InvalidArgumentError(f"link_check supports 0 <= k <= 12, got {k}")
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0.0, 2.0 * np.pi, size=sample_count)
    worst = 0.0
    norm_dev = 0.0
    for theta in thetas:
        left, right = link_sides(k, float(theta), literal=literal)
        worst = max(worst, float(np.linalg.norm(left - right)))
        norm_dev = max(norm_dev, abs(float(np.linalg.norm(right)) - 1.0))
    return worst, norm_dev
