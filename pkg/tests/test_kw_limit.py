#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from core.errors import DegenerateRatioError, SingularStratumError
from core.kahler import kahler_state, matrix_coeff
from core.kw_limit import (
    GaussianMatrixTest,
    big_f,
    big_f_product,
    bs_monodromy,
    bs_scan,
    conj_projector,
    convergence_profile,
    fiber_moments,
    harmonic_by_quadrature,
    harmonics,
    harmonics_by_quadrature,
    kahler_pairing,
    kw_pairing,
    kw_state,
    kw_state_eval,
    laplace_test,
    log_asymptotic,
    ratio_function,
    spectral_gaps,
)
from core.lie_core import character_value, random_chamber_point, torus_element
from core.phase_space import kak_decompose, tinv_act
from core.representations import haar_quadrature, irrep, weight_projector
from models.phase_models import CotangentPoint, KAKFrame


def diagonal_point(g, s, x=None):
    x = np.eye(2, dtype=complex) if x is None else x
    return CotangentPoint(x, np.diag(g.weight_to_diag([s])).astype(complex))


def unit(d, i, j):
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


def test_big_f_on_diagonal_point(su2):
    ir = irrep(su2, (1,))
    assert big_f(su2, ir, np.eye(2), diagonal_point(su2, 1.0)) == pytest.approx(1.0)


def test_big_f_product_form(su2, make_point, rng):
    ir = irrep(su2, (2,))
    p = make_point()
    u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    expected = big_f(su2, ir, np.outer(u, v.conj()), p)
    assert big_f_product(su2, ir, u, v, p) == pytest.approx(expected, rel=1e-10)


def test_big_f_modulus_is_torus_invariant(su2, make_point, random_matrix):
    ir = irrep(su2, (3,))
    a = random_matrix(4)
    p = make_point()
    q = tinv_act(su2, p, torus_element(su2, [1.234]))
    assert abs(big_f(su2, ir, a, q)) == pytest.approx(abs(big_f(su2, ir, a, p)), rel=1e-10)


def test_conj_projector(su2, make_point):
    ir = irrep(su2, (2,))
    p = make_point()
    frame = kak_decompose(su2, p)
    identity = KAKFrame(x1=p.x, xi_plus=frame.xi_plus, x2=np.eye(2, dtype=complex))
    np.testing.assert_allclose(conj_projector(ir, (2,), identity), weight_projector(ir, (2,)))

    total = sum(conj_projector(ir, nu, frame) for nu in ir.distinct_weights())
    np.testing.assert_allclose(total, np.eye(3), atol=1e-12)
    proj = conj_projector(ir, (0,), frame)
    np.testing.assert_allclose(proj @ proj, proj, atol=1e-12)

    # cambiar x2 por x2 t no altera el proyector
    t = torus_element(su2, [0.61])
    shifted = KAKFrame(x1=frame.x1 @ t, xi_plus=frame.xi_plus, x2=frame.x2 @ t)
    np.testing.assert_allclose(conj_projector(ir, (0,), shifted), proj, atol=1e-12)


def test_harmonics_on_diagonal_point(su2, quadratic):
    ir = irrep(su2, (1,))
    s = 0.9
    table = harmonics(quadratic, ir, np.eye(2), diagonal_point(su2, s))
    assert table.entries[(1,)] == pytest.approx(np.exp(s / 2))
    assert table.entries[(-1,)] == pytest.approx(np.exp(-s / 2))
    assert table.total() == pytest.approx(2 * np.cosh(s / 2))
    assert set(table.subleading()) == {(-1,)}


@pytest.mark.parametrize("lam", [(1,), (2,), (3,)])
def test_harmonics_reconstruct_matrix_coeff(su2, quartic, sample_points, random_matrix, lam):
    ir = irrep(su2, lam)
    a = random_matrix(ir.dim)
    for p in sample_points:
        f = matrix_coeff(quartic, ir, a, p)
        table = harmonics(quartic, ir, a, p)
        assert abs(table.total() - f) <= 1e-10 * max(1.0, abs(f))


def test_harmonics_by_quadrature(su2, quadratic, make_point, random_matrix):
    ir = irrep(su2, (2,))
    a = random_matrix(3)
    p = make_point()
    exact = harmonics(quadratic, ir, a, p).entries
    quad = harmonics_by_quadrature(quadratic, ir, a, p)
    scale = max(1.0, max(abs(v) for v in exact.values()))
    for nu, value in exact.items():
        assert abs(quad[nu] - value) <= 1e-9 * scale


def test_harmonics_are_torus_equivariant(su2, quadratic, make_point, random_matrix, rng):
    ir = irrep(su2, (3,))
    a = random_matrix(4)
    for _ in range(50):
        p = make_point()
        t = torus_element(su2, [rng.uniform(0.0, 4 * np.pi)])
        before = harmonics(quadratic, ir, a, p).entries
        after = harmonics(quadratic, ir, a, tinv_act(su2, p, t)).entries
        for nu, value in before.items():
            expected = character_value(su2, nu, t.conj().T) * value
            assert abs(after[nu] - expected) <= 1e-10 * max(1.0, abs(value))


def test_single_harmonic_by_quadrature(su2, quartic, make_point, random_matrix):
    ir = irrep(su2, (1,))
    a = random_matrix(2)
    p = make_point()
    exact = harmonics(quartic, ir, a, p).entries
    for nu in ir.distinct_weights():
        value = harmonic_by_quadrature(quartic, ir, a, p, nu, nodes=64)
        assert abs(value - exact[nu]) <= 1e-9 * max(1.0, abs(exact[nu]))


@pytest.mark.parametrize("with_quartic", [False, True])
def test_spectral_gaps_are_positive(su2, quadratic, quartic, rng, with_quartic):
    h = quadratic + quartic if with_quartic else quadratic
    for n in range(1, 7):
        ir = irrep(su2, (n,))
        for _ in range(100):
            gaps = spectral_gaps(su2, h, ir, random_chamber_point(su2, rng))
            assert set(gaps) == set(ir.distinct_weights()) - {ir.highest}
            assert min(gaps.values()) > 0.0


def test_convergence_rate_matches_prediction(su2, quartic, quadratic, make_point, random_matrix):
    ir = irrep(su2, (2,))
    a = random_matrix(3)
    p = make_point(1.0)
    profile = convergence_profile(quartic, quadratic, ir, a, p, np.linspace(10.0, 40.0, 13))
    assert profile.predicted_rate == pytest.approx(1.0)
    assert abs(profile.rate_ratio - 1.0) <= 0.1
    assert profile.r_squared == pytest.approx(1.0, abs=1e-6)
    errors = [row[2] for row in profile.rows]
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))

    # mientras la cola domina el redondeo, coincide con la diferencia directa
    limit = big_f(su2, ir, a, p)
    for t, rescaled, tail in profile.rows:
        if t <= 25.0:
            assert abs(rescaled - limit) == pytest.approx(tail, rel=1e-2, abs=1e-13)


def test_convergence_single_harmonic(su2, zero, quadratic):
    ir = irrep(su2, (1,))
    profile = convergence_profile(zero, quadratic, ir, unit(2, 0, 0), diagonal_point(su2, 1.0), [1.0, 2.0, 4.0])
    assert all(row[2] < 1e-14 for row in profile.rows)
    assert profile.predicted_rate == float("inf")
    for _, rescaled, _ in profile.rows:
        assert rescaled == pytest.approx(1.0)


def test_log_asymptotic(su2, zero, quadratic, make_point):
    ir = irrep(su2, (1,))
    p = make_point(1.3)
    p = CotangentPoint(np.eye(2, dtype=complex), p.xi)
    value = log_asymptotic(zero, quadratic, ir, np.eye(2), p, 1000.0)
    # <lambda, L_h(s)> = s / 2 para h cuadrática
    assert value == pytest.approx(0.65, abs=1e-3)


def test_ratio_function(su2, quadratic, make_point, random_matrix):
    ir = irrep(su2, (2,))
    a1, a2 = random_matrix(3), random_matrix(3)
    p = make_point(1.0)
    assert ratio_function(su2, ir, a1, a1, p) == pytest.approx(1.0)

    ratio = ratio_function(su2, ir, a1, a2, p)
    t = 30.0
    g_t = quadratic.scaled(t)
    kahler_ratio = matrix_coeff(g_t, ir, a1, p) / matrix_coeff(g_t, ir, a2, p)
    assert abs(kahler_ratio - ratio) <= 1e-4 * abs(ratio)

    q = tinv_act(su2, p, torus_element(su2, [2.2]))
    assert ratio_function(su2, ir, a1, a2, q) == pytest.approx(ratio, rel=1e-9)


def test_ratio_function_degenerate(su2):
    ir = irrep(su2, (1,))
    with pytest.raises(DegenerateRatioError):
        ratio_function(su2, ir, np.eye(2), unit(2, 1, 1), diagonal_point(su2, 1.0))


@pytest.mark.parametrize("name", ["quadratic", "quartic"])
@pytest.mark.parametrize("lam", [(1,), (3,)])
def test_laplace_error_decays_like_one_over_t(request, name, lam):
    h = request.getfixturevalue(name)
    coarse = laplace_test(h, lam, 20.0)
    fine = laplace_test(h, lam, 200.0)
    assert coarse.limit == pytest.approx((lam[0] + 1.0) ** 2)
    assert 8.0 <= coarse.error / fine.error <= 12.0


def test_bs_monodromy(su2):
    assert bs_monodromy(su2, (1,), diagonal_point(su2, 3.0)) == 1.0
    assert bs_monodromy(su2, (1,), diagonal_point(su2, 3.5)) == pytest.approx(-1.0)
    assert abs(bs_monodromy(su2, (1,), diagonal_point(su2, 2.25)) - 1.0) > 0.5
    with pytest.raises(SingularStratumError):
        bs_monodromy(su2, (1,), diagonal_point(su2, 0.0))


def test_bs_monodromy_is_kk_invariant(su2, make_point):
    p = make_point(2.0)
    assert bs_monodromy(su2, (1,), p) == pytest.approx(1.0)


def test_bs_scan(su2):
    rows = bs_scan(su2, upper=5.0, step=0.01)
    assert len(rows) == 500
    lattice = {s: m for s, m in rows if s == round(s)}
    assert sorted(lattice) == [1.0, 2.0, 3.0, 4.0, 5.0]
    assert all(m == 1.0 for m in lattice.values())
    off = [abs(m - 1.0) for s, m in rows if abs(s - round(s)) > 0.01 + 1e-12]
    assert min(off) > 0.05


def test_bs_scan_requires_rank_one(su3):
    with pytest.raises(ValueError):
        bs_scan(su3)


def test_kw_state(su2):
    st = kw_state(su2, (1,), np.eye(2))
    np.testing.assert_allclose(st.support, [2.0])
    assert st.normalization == pytest.approx(np.sqrt(2 * np.pi) * 4.0)
    value = kw_state_eval(su2, st, np.eye(2), np.eye(2))
    assert value == pytest.approx(st.normalization)


def test_fiber_moments_exact_against_haar(su2, random_matrix):
    ir = irrep(su2, (1,))
    a, b = random_matrix(2), random_matrix(2)
    test = GaussianMatrixTest(np.array([2.0]), 1.0, (1,), b)
    exact = fiber_moments(su2, ir, a, test)
    quad = fiber_moments(su2, ir, a, test, haar_order=3)
    for nu in ir.distinct_weights():
        assert abs(exact[nu] - quad[nu]) < 1e-10
    assert exact[(1,)] == pytest.approx(np.trace(a @ b.conj().T) / 4)
    assert exact[(-1,)] == 0


def test_fiber_moments_vanish_for_other_weight(su2, random_matrix):
    ir = irrep(su2, (2,))
    test = GaussianMatrixTest(np.array([3.0]), 1.0, (1,), random_matrix(2))
    assert all(m == 0 for m in fiber_moments(su2, ir, random_matrix(3), test).values())


def test_kahler_pairing_approaches_kw_pairing(su2, zero, quadratic, random_matrix):
    a = random_matrix(2)
    limit_state = kw_state(su2, (1,), a)
    support = limit_state.support
    test = GaussianMatrixTest(support, float(np.linalg.norm(support)) / np.sqrt(2.0), (1,), a)
    st = kahler_state(su2, (1,), a, base=zero, ray=quadratic, time=100.0)
    kahler = kahler_pairing(su2, st, test)
    limit = kw_pairing(su2, limit_state, test)
    assert abs(kahler - limit) <= 1e-2 * abs(limit)


def test_kahler_pairing_requires_kahler_state(su2, random_matrix):
    from core.kahler import schrodinger_state

    a = random_matrix(2)
    test = GaussianMatrixTest(np.array([2.0]), 1.0, (1,), a)
    with pytest.raises(ValueError):
        kahler_pairing(su2, schrodinger_state(su2, (1,), a), test)


def test_kw_state_eval_schur_orthogonality(su2):
    rule = haar_quadrature(su2, 2)
    elements = rule.elements
    weights = np.outer(rule.weights, rule.weights)
    states = {(i, j): kw_state(su2, (1,), unit(2, i, j)) for i in range(2) for j in range(2)}
    values = {
        key: np.array([[kw_state_eval(su2, st, k1, k2) for k2 in elements] for k1 in elements])
        for key, st in states.items()
    }
    norm = states[(0, 0)].normalization
    for first, u in values.items():
        for second, v in values.items():
            gram = np.sum(weights * u * v.conj())
            expected = norm**2 / 4 if first == second else 0.0
            assert abs(gram - expected) <= 1e-10 * norm**2
