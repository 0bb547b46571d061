"""Lacunary products f(2**k t) ... f(t) on finite groups, and matrix-walk sampling."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .circle import ks_uniform
from .errors import InvalidArgumentError, ResourceLimitError
from .su2 import rep_matrix_batch

STATE_BUDGET = 1 << 20
BRUTE_FORCE_MAX_BITS = 24
MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group given by its Cayley table: ``cayley[a, b]`` is the index of a*b."""

    cayley: np.ndarray
    identity: int = 0
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        table = np.asarray(self.cayley, dtype=np.int64)
        table.flags.writeable = False
        object.__setattr__(self, "cayley", table)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(table.shape[0])))
        self.validate()

    @property
    def order(self) -> int:
        return int(self.cayley.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def validate(self) -> None:
        n = self.cayley.shape[0]
        if self.cayley.shape != (n, n) or n == 0:
            raise InvalidArgumentError("Cayley table must be a non-empty square array")
        if len(self.labels) != n:
            raise InvalidArgumentError("one label per group element is required")
        if not 0 <= self.identity < n:
            raise InvalidArgumentError("identity index out of range")
        full = np.arange(n)
        for axis_rows in (self.cayley, self.cayley.T):
            if not all(np.array_equal(np.sort(row), full) for row in axis_rows):
                raise InvalidArgumentError("Cayley table is not a Latin square")
        if not (np.array_equal(self.cayley[self.identity], full) and np.array_equal(self.cayley[:, self.identity], full)):
            raise InvalidArgumentError("identity element does not act trivially")
        if n <= 24:
            c = self.cayley
            left = c[c[:, :, None], full[None, None, :]]  # (a*b)*x
            right = c[full[:, None, None], c[None, :, :]]  # a*(b*x)
            if not np.array_equal(left, right):
                raise InvalidArgumentError("Cayley table is not associative")

    def subgroup_closure(self, elements) -> set[int]:
        out = {self.identity} | set(int(e) for e in elements)
        while True:
            new = {self.mul(a, b) for a in out for b in out} | out
            if new == out:
                return out
            out = new


def cyclic_group(n: int) -> FiniteGroup:
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, 0, tuple(str(v) for v in range(n)))


def symmetric_group(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            # (a*b)(x) = a(b(x))
            table[a, b] = index[tuple(pa[pb[x]] for x in range(n))]
    labels = tuple("".join(str(v) for v in p) for p in perms)
    return FiniteGroup(table, index[tuple(range(n))], labels)


def named_group(name: str) -> FiniteGroup:
    name = name.lower()
    if name.startswith("z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("s") and name[1:].isdigit() and 1 <= int(name[1:]) <= 4:
        return symmetric_group(int(name[1:]))
    raise InvalidArgumentError(f"unknown group {name!r}; expected z<n> or s1..s4")


@dataclass(frozen=True)
class DyadicStepFunction:
    """f constant on [i/2**r, (i+1)/2**r) with value ``table[i]``, extended periodically."""

    resolution: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.resolution < 1:
            raise InvalidArgumentError("resolution must be at least 1")
        if len(self.table) != 1 << self.resolution:
            raise InvalidArgumentError(
                f"table has {len(self.table)} entries, expected 2**{self.resolution}"
            )

    def check_against(self, group: FiniteGroup) -> None:
        if any(not 0 <= v < group.order for v in self.table):
            raise InvalidArgumentError("step-function value outside the group")

    def __call__(self, t: float) -> int:
        return self.table[int(np.floor((t % 1.0) * (1 << self.resolution)))]


PRESETS = {
    # 0 on [0,1/8) u [1/2,5/8) u [3/4,1), 1 on [1/8,1/2) u [5/8,3/4)
    "paper-counterexample": ("z2", DyadicStepFunction(3, (0, 1, 1, 1, 0, 1, 0, 0))),
}


def load_instance(doc: dict | str) -> tuple[FiniteGroup, DyadicStepFunction]:
    """Group and step function from {order, cayley, identity, labels, resolution, table}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    cayley = np.asarray(doc["cayley"], dtype=np.int64)
    if "order" in doc and int(doc["order"]) != cayley.shape[0]:
        raise InvalidArgumentError("order does not match the Cayley table")
    group = FiniteGroup(cayley, int(doc.get("identity", 0)), tuple(doc.get("labels", ())))
    f = DyadicStepFunction(int(doc["resolution"]), tuple(int(v) for v in doc["table"]))
    f.check_against(group)
    return group, f


@dataclass(frozen=True)
class ExactDistribution:
    order: int
    masses: dict[int, Fraction]
    labels: tuple[str, ...] = ()

    @classmethod
    def from_counts(cls, counts, denominator: int, labels=()) -> "ExactDistribution":
        masses = {i: Fraction(int(c), denominator) for i, c in enumerate(counts)}
        return cls(len(masses), masses, tuple(labels))

    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    def to_dict(self) -> dict[str, str]:
        labels = self.labels or tuple(str(i) for i in range(self.order))
        return {labels[i]: f"{m.numerator}/{m.denominator}" for i, m in sorted(self.masses.items())}


def exact_product_distribution(
    group: FiniteGroup, f: DyadicStepFunction, k: int, budget: int = STATE_BUDGET
) -> ExactDistribution:
    """Law of f(2**k t) ... f(t) by dynamic programming over (bit window, product)."""
    if k < 0:
        raise InvalidArgumentError(f"k must be non-negative, got {k}")
    f.check_against(group)
    r = f.resolution
    width = 1 << r
    if width * group.order > budget:
        raise ResourceLimitError(f"state space {width * group.order} exceeds budget {budget}")
    dtype = np.int64 if r + k < 62 else object
    table = np.asarray(f.table, dtype=np.int64)
    # counts[w, g]: number of length-(r+j) bit prefixes ending in window w with product g
    counts = np.zeros((width, group.order), dtype=dtype)
    counts[np.arange(width), table] = 1
    windows = np.arange(width)
    pred0 = windows >> 1
    pred1 = pred0 | (1 << (r - 1))
    rows = windows[:, None]
    perm = group.cayley[table][:, :]  # perm[w, g] = f-value(w) * g
    for _ in range(k):
        incoming = counts[pred0] + counts[pred1]
        counts = np.zeros_like(incoming)
        counts[rows, perm] = incoming
    return ExactDistribution.from_counts(counts.sum(axis=0), 1 << (r + k), group.labels)


def brute_force_distribution(group: FiniteGroup, f: DyadicStepFunction, k: int) -> ExactDistribution:
    """Same law by enumerating all 2**(k+r) dyadic intervals of t."""
    if k < 0:
        raise InvalidArgumentError(f"k must be non-negative, got {k}")
    f.check_against(group)
    if k + f.resolution > BRUTE_FORCE_MAX_BITS:
        raise ResourceLimitError(f"k + r = {k + f.resolution} exceeds {BRUTE_FORCE_MAX_BITS}")
    counts = kernels.brute_force_counts(np.asarray(f.table), group.cayley, f.resolution, k)
    return ExactDistribution.from_counts(counts, 1 << (k + f.resolution), group.labels)


def tv_distance_to_uniform(dist: ExactDistribution) -> Fraction:
    u = Fraction(1, dist.order)
    return sum((abs(dist.masses.get(i, Fraction(0)) - u) for i in range(dist.order)), Fraction(0)) / 2


# --------------------------------------------------------------------------
# Monte Carlo sampling of the lacunary matrix walks
# --------------------------------------------------------------------------

WALK_KINDS = {"su2_g": 0, "u2_G": 1}


@dataclass
class WalkStatistics:
    kind: str
    k: int
    samples: int
    seed: int
    unitarity_residual: float
    entry_means: np.ndarray
    rep_means: dict[int, np.ndarray] = field(default_factory=dict)
    entry_ks: float = float("nan")
    entry_bins: np.ndarray | None = None
    phase_correlation: float = float("nan")
    det_phase_ks: float | None = None

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
            "unitarity_residual": self.unitarity_residual,
            "entry_ks": self.entry_ks,
            "entry_bins": [float(v) for v in self.entry_bins],
            "phase_correlation": self.phase_correlation,
            "max_rep_mean": {str(L): float(np.abs(m).max()) for L, m in self.rep_means.items()},
        }
        if self.det_phase_ks is not None:
            out["det_phase_ks"] = self.det_phase_ks
        return out


def sample_points(seed: int, samples: int, chunk: int = MC_CHUNK):
    """Yield (hi, lo) 128-bit fixed-point draws of t in fixed-size chunks."""
    nchunks = -(-samples // chunk)
    children = np.random.SeedSequence(seed).spawn(nchunks)
    for c, child in enumerate(children):
        size = min(chunk, samples - c * chunk)
        rng = np.random.Generator(np.random.PCG64(child))
        hi = rng.integers(0, 2**64, size=size, dtype=np.uint64, endpoint=False)
        lo = rng.integers(0, 2**64, size=size, dtype=np.uint64, endpoint=False)
        yield hi, lo


def monte_carlo_matrix_walk(
    kind: str, k: int, samples: int, seed: int = 0, rep_labels=(1, 2, 3, 4), bins: int = 16
) -> WalkStatistics:
    """Sample F(w**(2**k)) ... F(w) for uniform w and summarize its distribution."""
    if kind not in WALK_KINDS:
        raise InvalidArgumentError(f"kind must be one of {sorted(WALK_KINDS)}, got {kind!r}")
    if samples < 1:
        raise InvalidArgumentError("samples must be positive")
    if not 0 <= k <= 40:
        raise InvalidArgumentError(f"k must lie in [0, 40], got {k}")
    code = WALK_KINDS[kind]
    unit = 0.0
    entry_sum = np.zeros((2, 2), dtype=np.complex128)
    zeta_entry_sum = np.zeros((2, 2), dtype=np.complex128)
    zeta_sum = 0j
    rep_sums = {L: np.zeros((L + 1, L + 1), dtype=np.complex128) for L in rep_labels} if code == 0 else {}
    sq_parts, det_parts = [], []
    eye = np.eye(2)
    for hi, lo in sample_points(seed, samples):
        mats = kernels.matrix_walk(hi, lo, k, code)
        resid = np.einsum("sji,sjk->sik", mats.conj(), mats) - eye
        unit = max(unit, float(np.abs(resid).max()))
        entry_sum += mats.sum(axis=0)
        phase = (kernels.doubled_phase(hi, lo, k + 1) - kernels.doubled_phase(hi, lo, 0)) % 1.0
        zeta = np.exp(2j * np.pi * phase)
        zeta_sum += zeta.sum()
        zeta_entry_sum += np.einsum("s,sij->ij", zeta, mats)
        for L in rep_sums:
            rep_sums[L] += rep_matrix_batch(L, mats).sum(axis=0)
        sq_parts.append(np.abs(mats[:, 0, 0]) ** 2)
        if code == 1:
            det = mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
            det_parts.append((np.angle(det) / (2 * np.pi)) % 1.0)
    sq = np.concatenate(sq_parts)
    entry_means = entry_sum / samples
    corr = zeta_entry_sum / samples - (zeta_sum / samples) * entry_means
    edges = np.linspace(0.0, 1.0, bins + 1)
    hist, _ = np.histogram(np.clip(sq, 0.0, 1.0), bins=edges)
    return WalkStatistics(
        kind=kind,
        k=k,
        samples=samples,
        seed=seed,
        unitarity_residual=unit,
        entry_means=entry_means,
        rep_means={L: s / samples for L, s in rep_sums.items()},
        entry_ks=ks_uniform(sq),
        entry_bins=hist / samples,
        phase_correlation=float(np.abs(corr).max()),
        det_phase_ks=ks_uniform(np.concatenate(det_parts)) if code == 1 else None,
    )
