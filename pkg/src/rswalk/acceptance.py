"""The eight acceptance criteria, runnable at a fast or full budget.

Each ``criterion_N`` returns a :class:`CriterionResult`; :func:`run_suite`
collects them in order.  The fast level shrinks k and grid sizes so the suite
finishes in well under a minute; the full level uses the stated budgets.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import circle, dyadic, halving, rudin_shapiro as rs, su2

LEVELS = ("fast", "full")
INJECTED_PERTURBATION = 1e-3


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{status}] criterion {self.number}: {self.title} ({parts}) {self.seconds:.1f}s"

    def as_dict(self) -> dict:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "measured": {k: _jsonable(v) for k, v in self.measured.items()},
            "seconds": round(self.seconds, 3),
        }


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.3g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    return v


def _check_level(level: str) -> None:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")


def _timed(number: int, title: str, body) -> CriterionResult:
    start = time.perf_counter()
    passed, measured = body()
    return CriterionResult(number, title, bool(passed), measured, time.perf_counter() - start)


def criterion_1(level: str = "full") -> CriterionResult:
    _check_level(level)
    k_parseval = 16 if level == "full" else 12
    k_alt = 14 if level == "full" else 10

    def body():
        parseval = [rs.parseval_identity_check(k)[0] for k in range(k_parseval + 1)]
        alt = [rs.alt_recursion_check(k) for k in range(k_alt + 1)]
        at_minus_one = [rs.value_at_minus_one(rs.generate(k).p_coeffs) for k in range(1, 16, 2)]
        ok = all(parseval) and all(alt) and all(v == 0 for v in at_minus_one)
        return ok, {
            "parseval_k_max": k_parseval,
            "parseval_failures": parseval.count(False),
            "alt_k_max": k_alt,
            "alt_failures": alt.count(False),
            "max_abs_p_at_minus_one": max(abs(v) for v in at_minus_one),
        }

    return _timed(1, "exact recursion and identities", body)


def criterion_2(level: str = "full") -> CriterionResult:
    _check_level(level)
    k_second = 16 if level == "full" else 10
    ks = (4, 8, 12) if level == "full" else (2, 4, 6)
    expected = {1: Fraction(3, 8), 2: Fraction(5, 16), 3: Fraction(88, 256)}

    def body():
        second = [rs.exact_even_moment(k, 1).value for k in range(k_second + 1)]
        fourth = {k: rs.exact_even_moment(k, 2).value for k in expected}
        errors = {}
        monotone = True
        for n in (2, 3, 4):
            errs = [abs(rs.exact_even_moment(k, n).value - Fraction(1, n + 1)) for k in ks]
            errors[n] = [float(e) for e in errs]
            monotone &= errs[2] < errs[1] < errs[0]
        ok = all(v == Fraction(1, 2) for v in second) and fourth == expected and monotone
        measured = {
            "second_moment_k_max": k_second,
            "second_moment_all_half": all(v == Fraction(1, 2) for v in second),
            "fourth_moments": [fourth[k] for k in sorted(fourth)],
            "k_values": list(ks),
        }
        for n, errs in errors.items():
            measured[f"err_n{n}"] = errs
        return ok, measured

    return _timed(2, "exact moments", body)


def criterion_3(level: str = "full", perturbation: float = 0.0, seed: int = 0) -> CriterionResult:
    """Unitarity, tau^{1/2} = g(1) and the homomorphism property.

    ``perturbation`` adds that amount to the (0, 0) entry of every tau before
    the unitarity check; a working suite must then report failure.
    """
    _check_level(level)
    pairs = 100 if level == "full" else 20

    def body():
        unit = 0.0
        for two_ell in range(1, 17):
            tau = su2.tau_matrix(two_ell).entries.copy()
            tau[0, 0] += perturbation
            d = two_ell + 1
            unit = max(unit, float(np.max(np.abs(tau.conj().T @ tau - np.eye(d)))))
        half = float(np.max(np.abs(su2.tau_matrix(1).entries - su2.g_matrix(1.0))))
        rng = np.random.default_rng(seed)
        hom = 0.0
        for two_ell in range(1, 9):
            a = su2.random_su2(rng, pairs)
            b = su2.random_su2(rng, pairs)
            lhs = su2.rep_matrix_batch(two_ell, a @ b)
            rhs = su2.rep_matrix_batch(two_ell, a) @ su2.rep_matrix_batch(two_ell, b)
            hom = max(hom, float(np.max(np.abs(lhs - rhs))))
        ok = unit <= 1e-12 and half <= 1e-14 and hom <= 1e-9
        return ok, {"unitarity_residual": unit, "half_vs_g1": half, "homomorphism_residual": hom}

    return _timed(3, "representation correctness", body)


def criterion_4(level: str = "full") -> CriterionResult:
    _check_level(level)
    top = 16 if level == "full" else 8

    def body():
        worst_sv = np.inf
        worst_center = 0.0
        worst_corner = 0.0
        worst_pattern = np.inf
        for two_ell in range(1, top + 1):
            rep = su2.verify_propositions(two_ell)
            worst_sv = min(worst_sv, rep.min_singular_value)
            if rep.tau_center is not None:
                worst_center = max(worst_center, rep.tau_center)
            worst_corner = max(worst_corner, rep.tau_low_corner, rep.tau_high_corner)
            worst_pattern = min(worst_pattern, min(rep.pattern_min_singular.values()))
        ok = (
            worst_sv >= 1.0 - 1e-9
            and worst_center <= 1.0 - 1e-6
            and worst_corner <= 1.0 - 1e-6
            and worst_pattern > 1e-8
        )
        return ok, {
            "min_singular_value": float(worst_sv),
            "max_center": worst_center,
            "max_corner": worst_corner,
            "min_pattern_singular": float(worst_pattern),
        }

    return _timed(4, "structural properties of tau", body)


def criterion_5(level: str = "full") -> CriterionResult:
    _check_level(level)
    top_ell = 8 if level == "full" else 4
    top_interior = 9 if level == "full" else 6

    def body():
        largest_eig = 0.0
        rho_1 = halving.spectral_radius(halving.build_S(2)).spectral_radius
        radii = []
        for ell in range(2, top_ell + 1):
            rep = halving.spectral_radius(halving.build_S(2 * ell))
            radii.append(rep.spectral_radius)
        interior_max = 0.0
        for two_ell, lam in halving.interior_parameters(top_interior):
            rep = halving.spectral_radius(halving.build_S_lambda(two_ell, lam))
            interior_max = max(interior_max, rep.spectral_radius)
        largest_eig = max([rho_1, interior_max] + radii)
        ok = (
            rho_1 <= 1e-12
            and max(radii) <= 1.0 - 1e-6
            and interior_max <= 1.0 - 1e-6
            and largest_eig <= halving.RADIUS_CEILING
        )
        return ok, {
            "rho_s1": rho_1,
            "max_rho_integer": max(radii),
            "max_rho_interior": interior_max,
            "interior_two_ell_max": top_interior,
        }

    return _timed(5, "spectral radii below one", body)


def criterion_6(level: str = "full") -> CriterionResult:
    _check_level(level)
    k_max = 3
    steps = 12 if level == "full" else 6

    def body():
        worst = 0.0
        support = True
        for two_ell in range(1, 5):
            for lam in range(-3, 4):
                for k in range(k_max + 1):
                    chk = halving.cross_check_symbolic(two_ell, lam, k)
                    worst = max(worst, chk.residual)
                    support &= chk.support_ok
            for k in range(k_max + 1):
                brute = halving.cross_check_symbolic(two_ell, 0, k).brute_force
                worst = max(worst, float(np.max(np.abs(halving.expected_rep(two_ell, k) - brute))))
        norms = [np.linalg.norm(halving.independence_moment(1, 1, k)) for k in range(steps + 1)]
        ratio_dev = max(abs(norms[k + 1] / norms[k] - 2 ** -0.5) for k in range(steps))
        ok = worst <= 1e-10 and support and ratio_dev <= 1e-10
        return ok, {"cross_check_residual": worst, "support_ok": support, "boundary_ratio_deviation": ratio_dev}

    return _timed(6, "Weyl sums against symbolic products", body)


def random_instances(count: int, seed: int):
    """Random (group, step function, k) triples with r <= 4, order <= 6, k <= 6."""
    rng = np.random.default_rng(seed)
    groups = [dyadic.cyclic_group(n) for n in range(1, 7)] + [dyadic.symmetric_group(3)]
    for _ in range(count):
        group = groups[int(rng.integers(len(groups)))]
        r = int(rng.integers(1, 5))
        table = tuple(int(v) for v in rng.integers(0, group.order, size=1 << r))
        yield group, dyadic.DyadicStepFunction(r, table), int(rng.integers(0, 7))


def criterion_7(level: str = "full", seed: int = 7) -> CriterionResult:
    _check_level(level)
    top_k = 12 if level == "full" else 8
    count = 50 if level == "full" else 20

    def body():
        name, f = dyadic.PRESETS["paper-counterexample"]
        group = dyadic.named_group(name)
        p0 = [dyadic.exact_product_distribution(group, f, k).masses[0] for k in range(top_k + 1)]
        preset_ok = p0[0] == Fraction(1, 2) and all(v == Fraction(5, 8) for v in p0[1:])
        preset_brute = all(
            dyadic.exact_product_distribution(group, f, k) == dyadic.brute_force_distribution(group, f, k)
            for k in range(7)
        )
        mismatches = sum(
            dyadic.exact_product_distribution(g, h, k) != dyadic.brute_force_distribution(g, h, k)
            for g, h, k in random_instances(count, seed)
        )
        ok = preset_ok and preset_brute and mismatches == 0
        return ok, {
            "p0_k0": p0[0],
            "p0_k1_to_kmax_all_5_8": all(v == Fraction(5, 8) for v in p0[1:]),
            "k_max": top_k,
            "preset_dp_equals_brute": preset_brute,
            "random_instances": count,
            "random_mismatches": mismatches,
        }

    return _timed(7, "dyadic counterexample", body)


def criterion_8(level: str = "full") -> CriterionResult:
    _check_level(level)
    if level == "full":
        N, ks, samples, link_k = 1 << 20, (4, 8, 12, 16), 1000, 12
    else:
        N, ks, samples, link_k = 1 << 16, (4, 8, 12), 100, 8

    def body():
        ks_stats = [circle.saffari_report(k, N).ks_statistic for k in ks]
        mont8 = circle.montgomery_report(8, N).max_cell_deviation
        mont16 = circle.montgomery_report(16, N).max_cell_deviation
        link = max(circle.link_check(k, samples, seed=k)[0] for k in range(link_k + 1))
        decreasing = all(a > b for a, b in zip(ks_stats, ks_stats[1:]))
        ok = decreasing and mont16 < mont8 and link <= 1e-10
        return ok, {
            "n_points": N,
            "ks": ks_stats,
            "montgomery_k8": mont8,
            "montgomery_k16": mont16,
            "link_residual": link,
        }

    return _timed(8, "empirical equidistribution", body)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8)


def run_suite(level: str = "fast", inject_failure: bool = False, echo=None) -> list[CriterionResult]:
    """Run all criteria in order; ``echo`` (e.g. ``print``) receives each summary line."""
    _check_level(level)
    results = []
    for fn in CRITERIA:
        if fn is criterion_3 and inject_failure:
            res = fn(level, perturbation=INJECTED_PERTURBATION)
        else:
            res = fn(level)
        results.append(res)
        if echo is not None:
            echo(res.line())
    return results
