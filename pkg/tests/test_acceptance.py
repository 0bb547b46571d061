"""Every acceptance criterion at its stated budget and tolerance.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line per
criterion.
"""
import pytest

from rswalk import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    result = criterion("full")
    print(result.line())
    assert result.passed, result.line()


def test_injected_tau_perturbation_fails_unitarity():
    result = acceptance.criterion_3("full", perturbation=acceptance.INJECTED_PERTURBATION)
    print("injected:", result.line())
    assert not result.passed
    assert result.measured["unitarity_residual"] > 1e-12


def test_fast_suite_passes():
    results = acceptance.run_suite("fast")
    assert [r.number for r in results] == list(range(1, 9))
    assert all(r.passed for r in results)
