import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rswalk import halving
from rswalk.errors import InvalidArgumentError, ResourceLimitError
from rswalk.laurent import COMPLEX, LaurentPoly, constant_term, multiply, reverse, split_parity
from rswalk.su2 import index_values, tau_matrix

# eigensolver output for S_l, l = 2..8, frozen from a reference run
FROZEN_RADII = {
    4: 0.829483540958496,
    6: 0.7437109419934239,
    8: 0.6873416155794531,
    10: 0.756886883712793,
    12: 0.7571403795072615,
    14: 0.7180080094537229,
    16: 0.7575373358478336,
}


def test_s1_structure():
    op = halving.build_S(2)
    assert op.dim == 3
    nonzero = np.flatnonzero(np.abs(op.matrix).sum(axis=0))
    assert nonzero.tolist() == [op.basis_index(0, 0)]
    R = 2**-0.5
    assert np.allclose(op.matrix[:, op.basis_index(0, 0)], [-R, 0, R])
    assert np.allclose(op.matrix @ op.matrix, 0)
    assert halving.spectral_radius(op).spectral_radius <= 1e-12


@pytest.mark.parametrize("two_ell", sorted(FROZEN_RADII))
def test_integer_radii(two_ell):
    op = halving.build_S(two_ell)
    assert op.dim == (two_ell + 1) * (two_ell - 1)
    rep = halving.spectral_radius(op)
    assert rep.spectral_radius == pytest.approx(FROZEN_RADII[two_ell], abs=1e-9)
    assert rep.spectral_radius <= 1 - 1e-6
    assert np.all(np.abs(rep.eigenvalues) <= 1 + 1e-9)


@pytest.mark.parametrize("two_ell", range(2, 17, 2))
def test_column_norms(two_ell):
    norms = np.linalg.norm(halving.build_S(two_ell).matrix, axis=0)
    nz = norms[norms > 0]
    assert np.allclose(nz, 1.0, atol=1e-12)


@pytest.mark.parametrize("two_ell,lam", halving.interior_parameters(9))
def test_interior_radii(two_ell, lam):
    op = halving.build_S_lambda(two_ell, lam)
    lo, hi = op.exponents
    assert (lo, hi) == ((lam - two_ell) // 2 + 1, (lam + two_ell) // 2 - 1)
    rep = halving.spectral_radius(op)
    assert rep.spectral_radius <= 1 - 1e-6
    assert rep.margin == pytest.approx(1 - rep.spectral_radius)


def test_lambda_zero_matches_plain_operator():
    for two_ell in (2, 4, 6):
        assert np.array_equal(halving.build_S_lambda(two_ell, 0).matrix, halving.build_S(two_ell).matrix)


def test_three_halves_lambda_one():
    op = halving.build_S_lambda(3, 1)
    assert op.dim == 8
    assert halving.spectral_radius(op).spectral_radius <= 1 - 1e-6


def test_operator_validation():
    with pytest.raises(InvalidArgumentError):
        halving.build_S(3)
    with pytest.raises(InvalidArgumentError):
        halving.build_S(0)
    with pytest.raises(InvalidArgumentError):
        halving.build_S_lambda(2, 1)
    with pytest.raises(InvalidArgumentError):
        halving.build_S_lambda(2, 2)


def poly_vector(rng, two_ell, lam=0):
    lo, hi = halving.exponent_span(two_ell, lam)
    return [
        LaurentPoly.from_coeffs(rng.standard_normal(hi - lo + 1) + 1j * rng.standard_normal(hi - lo + 1), lo, COMPLEX)
        for _ in index_values(two_ell)
    ]


def vec_to_array(op, vec):
    out = np.zeros(op.dim, dtype=np.complex128)
    for h2, p in zip(index_values(op.two_ell), vec):
        for i, c in enumerate(p.coeffs):
            out[op.basis_index(h2, p.low + i)] = c
    return out


@pytest.mark.parametrize("two_ell,lam", [(2, 0), (4, 0), (3, 1), (5, -1), (6, 2)])
def test_matrix_matches_symbolic_halving(two_ell, lam):
    rng = np.random.default_rng(two_ell * 10 + lam)
    op = halving.build_S_lambda(two_ell, lam)
    vec = poly_vector(rng, two_ell, lam)
    image = halving.apply_S_symbolic(two_ell, vec, lam)
    lo, hi = op.exponents
    assert all(p.is_zero() or (lo <= p.low and p.high <= hi) for p in image)
    assert np.allclose(op.matrix @ vec_to_array(op, vec), vec_to_array(op, image), atol=1e-12)


def mean_square(vec):
    """Sum over coordinates of the circle average of |p|^2, via p(w) conj(p)(1/w)."""
    total = 0.0
    for p in vec:
        r = reverse(p)
        conj_rev = LaurentPoly.from_coeffs(np.conj(r.coeffs), r.low, COMPLEX)
        total += constant_term(multiply(p, conj_rev)).real
    return total


@settings(max_examples=25)
@given(st.sampled_from([2, 4, 6]), st.integers(0, 2**32 - 1))
def test_energy_identity(two_ell, seed):
    # T(w) is unitary on the circle, so |A|^2 splits into even and odd parts of T A
    rng = np.random.default_rng(seed)
    vec = poly_vector(rng, two_ell)
    image = halving.apply_T(two_ell, vec)
    even_odd = [split_parity(p) for p in image]
    lhs = mean_square(vec)
    rhs = mean_square([e for e, _ in even_odd]) + mean_square([o for _, o in even_odd])
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_half_integer_expectation_vanishes():
    for two_ell in (1, 3, 5):
        for k in (0, 3, 9):
            assert not np.any(halving.expected_rep(two_ell, k))


def test_spin_one_expectation():
    tau = tau_matrix(2).entries
    e0 = halving.expected_rep(2, 0)
    # only the m = 0 column survives averaging w^(2n) at k = 0
    assert np.allclose(e0[:, 1], tau[:, 1]) and np.allclose(e0[:, [0, 2]], 0)
    for k in range(1, 6):
        assert np.max(np.abs(halving.expected_rep(2, k))) <= 1e-12


@pytest.mark.parametrize("two_ell,C", [(4, 1.21), (6, 1.35), (8, 1.67)])
def test_weyl_sum_envelope(two_ell, C):
    rho = halving.spectral_radius(halving.build_S(two_ell)).spectral_radius
    for k in range(0, 201, 1 if two_ell == 4 else 5):
        norm = np.linalg.norm(halving.expected_rep(two_ell, k), 2)
        assert norm <= C * rho ** (k + 1) + 1e-15


def test_independence_cases():
    assert not np.any(halving.independence_moment(2, 1, 4))
    assert not np.any(halving.independence_moment(2, 6, 4))
    for two_ell in (2, 4):
        for k in (0, 2, 5):
            assert np.allclose(halving.independence_moment(two_ell, 0, k), halving.expected_rep(two_ell, k))
    tau = tau_matrix(3).entries
    m = halving.independence_moment(3, 3, 4)
    assert np.allclose(m[:, 0], tau[0, 0] ** 4 * tau[:, 0]) and not np.any(m[:, 1:])
    m = halving.independence_moment(3, -3, 2)
    assert np.allclose(m[:, -1], tau[-1, -1] ** 2 * tau[:, -1]) and not np.any(m[:, :-1])


def test_boundary_decay_ratio():
    norms = [np.linalg.norm(halving.independence_moment(1, 1, k)) for k in range(15)]
    ratios = [b / a for a, b in zip(norms, norms[1:])]
    assert np.max(np.abs(np.array(ratios) - 2**-0.5)) <= 1e-10


@pytest.mark.parametrize("two_ell", range(1, 5))
@pytest.mark.parametrize("lam", range(-3, 4))
def test_symbolic_cross_check(two_ell, lam):
    for k in range(4):
        chk = halving.cross_check_symbolic(two_ell, lam, k)
        assert chk.residual <= 1e-10 and chk.support_ok


def test_symbolic_budget():
    with pytest.raises(ResourceLimitError):
        halving.symbolic_product(8, 0, 10)


def test_spectrum_outputs():
    op = halving.build_S(4)
    rep = halving.spectral_radius(op)
    lines = halving.spectrum_table_csv([(op, rep)]).splitlines()
    assert lines[0] == "two_ell,lambda,dim,spectral_radius,margin"
    assert lines[1].startswith("4,,15,")
    import json

    doc = json.loads(rep.to_json())
    assert len(doc["eigenvalues"]) == 15
