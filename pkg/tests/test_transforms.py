#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from core.convex import legendre_full
from core.kahler import kahler_potential, kahler_state, schrodinger_state, state_eval, state_norm
from core.kw_limit import kw_state
from core.transforms import (
    eigen_consistency_error,
    fourier_blocks_via_kw,
    fourier_hat,
    fourier_hat_exact,
    gcst,
    hall_heat_eigenvalue,
    kw_norm_squared,
    peter_weyl_function,
    phi_iso,
    plancherel_check,
    quantum_op,
    random_peter_weyl_sum,
    renormalized_hs,
    target_tag,
    transport_pointwise,
    transport_state,
)
from core.representations import irrep, rep_complexified
from models.state_models import Convention, IsotypicVector, QuantumState, StateTag, TagKind, TransformSpec


@pytest.fixture
def isotypic(random_matrix):
    return IsotypicVector({(0,): random_matrix(1), (1,): random_matrix(2)})


def test_quantum_op_eigenvalues(quadratic, isotypic):
    out = quantum_op(quadratic, isotypic)
    # h(lambda + rho) = |lambda + rho|^2 / 2 con <s, s> = s^2 / 2
    np.testing.assert_allclose(out.blocks[(0,)], 0.25 * isotypic.blocks[(0,)])
    np.testing.assert_allclose(out.blocks[(1,)], 1.0 * isotypic.blocks[(1,)])


@pytest.mark.parametrize("lam, expected", [((0,), 0.0), ((1,), 0.75), ((2,), 2.0), ((3,), 3.75)])
def test_hall_heat_eigenvalue(su2, lam, expected):
    assert hall_heat_eigenvalue(su2, lam) == pytest.approx(expected)


def test_gcst_from_schrodinger(quadratic, isotypic):
    out = gcst(TransformSpec(quadratic, 2.0), isotypic)
    assert out.tag.kind is TagKind.KAHLER
    assert out.tag.base.is_zero
    assert out.tag.time == 2.0
    for lam, a in isotypic.blocks.items():
        np.testing.assert_array_equal(out.blocks[lam], a)
    assert gcst(TransformSpec(quadratic, 0.0), isotypic).tag.kind is TagKind.SCHRODINGER


def test_gcst_composition(quadratic, isotypic):
    twice = gcst(TransformSpec(quadratic, 1.5), gcst(TransformSpec(quadratic, 0.5), isotypic))
    once = gcst(TransformSpec(quadratic, 2.0), isotypic)
    assert twice.tag.time == pytest.approx(once.tag.time)
    assert twice.tag.potential().same_as(once.tag.potential())
    for lam in isotypic.blocks:
        np.testing.assert_allclose(twice.blocks[lam], once.blocks[lam])


def test_target_tag_with_new_ray(quadratic, quartic):
    source = StateTag(TagKind.KAHLER, base=quartic, ray=quartic, time=1.0)
    tag = target_tag(TransformSpec(quadratic, 3.0, source))
    assert tag.ray is quadratic
    assert tag.time == 3.0
    s = np.array([1.4])
    assert tag.potential().value(s) == pytest.approx(2 * quartic.value(s) + 3 * quadratic.value(s))


def test_gcst_rejects_kirwin_wu(quadratic, isotypic):
    isotypic.tag = StateTag(TagKind.KIRWIN_WU)
    with pytest.raises(ValueError):
        gcst(TransformSpec(quadratic, 1.0), isotypic)


def test_transport_state_keeps_matrix(su2, quadratic, random_matrix):
    st = schrodinger_state(su2, (2,), random_matrix(3))
    out = transport_state(TransformSpec(quadratic, 1.0), st)
    np.testing.assert_array_equal(out.matrix, st.matrix)
    assert out.matrix is not st.matrix
    assert out.tag.kind is TagKind.KAHLER


def test_transport_pointwise_at_zero_time(su2, quartic, make_point, random_matrix):
    st = kahler_state(su2, (1,), random_matrix(2), base=quartic)
    p = make_point()
    value = transport_pointwise(su2, TransformSpec(quartic, 0.0), st, p)
    assert value.coefficient == state_eval(st, p).coefficient


@pytest.mark.parametrize("t", [0.5, 2.0])
def test_eigen_consistency_from_kahler_source(su2, quartic, quadratic, sample_points, random_matrix, t):
    st = kahler_state(su2, (2,), random_matrix(3), base=quartic + quadratic, ray=quadratic)
    spec = TransformSpec(quadratic, t)
    for p in sample_points:
        assert eigen_consistency_error(su2, spec, st, p) < 1e-8


def test_eigen_consistency_from_schrodinger_source(su2, quadratic, sample_points, random_matrix):
    st = schrodinger_state(su2, (1,), random_matrix(2))
    spec = TransformSpec(quadratic, 1.0)
    for p in sample_points:
        assert eigen_consistency_error(su2, spec, st, p) < 1e-8


@pytest.mark.parametrize("t", [0.5, 1.5])
def test_schrodinger_transport_is_analytic_continuation(su2, quadratic, sample_points, random_matrix, t):
    a = random_matrix(3)
    source = schrodinger_state(su2, (2,), a)
    st = QuantumState(source.weight, source.matrix, source.tag, Convention.SIGMA, source.group)
    ir = irrep(su2, (2,))
    for p in sample_points:
        # flujo imaginario x e^{i t L_h(xi)} aplicado directamente
        continued = np.trace(rep_complexified(ir, p.x, t * legendre_full(quadratic, p.xi)) @ a)
        expected = np.exp(-kahler_potential(quadratic.scaled(t), p)) * continued
        value = transport_pointwise(su2, TransformSpec(quadratic, t), st, p).coefficient
        assert abs(value - expected) <= 1e-10 * max(1.0, abs(expected))


def test_plancherel_exact_and_quadrature(su2, rng):
    for _ in range(20):
        f = random_peter_weyl_sum(su2, 4, rng)
        exact = plancherel_check(f)
        quad = plancherel_check(f, method="quadrature")
        assert exact.difference <= 1e-10 * max(1.0, exact.lhs)
        assert quad.difference <= 1e-8 * max(1.0, quad.lhs)
        assert quad.lhs == pytest.approx(exact.lhs, rel=1e-8)


def test_plancherel_rejects_unknown_method(su2):
    f = peter_weyl_function(su2, {(0,): np.eye(1)})
    with pytest.raises(ValueError):
        plancherel_check(f, method="montecarlo")


def test_fourier_hat_of_character(su2):
    chi = peter_weyl_function(su2, {(1,): np.eye(2)})
    np.testing.assert_allclose(fourier_hat(su2, chi, (1,), 2), np.eye(2) / 2, atol=1e-12)
    np.testing.assert_allclose(fourier_hat(su2, chi, (0,), 2), np.zeros((1, 1)), atol=1e-12)
    np.testing.assert_allclose(fourier_hat_exact(chi, (1,)), np.eye(2) / 2)


def test_fourier_hat_accepts_callables(su2):
    chi = peter_weyl_function(su2, {(2,): np.eye(3)})
    np.testing.assert_allclose(
        fourier_hat(su2, lambda x: chi(x), (2,), 3), fourier_hat(su2, chi, (2,), 3), atol=1e-12
    )


def test_fourier_blocks_via_kw(su2, rng):
    f = random_peter_weyl_sum(su2, 4, rng)
    via_kw = fourier_blocks_via_kw(su2, f)
    assert set(via_kw) == set(f.blocks)
    for lam, block in via_kw.items():
        np.testing.assert_allclose(block, fourier_hat(su2, f, lam, f.bandwidth + 1), atol=1e-10)


def test_kw_norm_matches_schrodinger_norm(su2, random_matrix):
    a = random_matrix(3)
    st = kw_state(su2, (2,), a)
    expected = state_norm(schrodinger_state(su2, (2,), a)).value
    assert kw_norm_squared(su2, st) == pytest.approx(expected, rel=1e-10)
    np.testing.assert_array_equal(phi_iso(st), a)


def test_renormalized_hs(random_matrix):
    a, b = random_matrix(3), random_matrix(3)
    assert renormalized_hs(3, a, b) == pytest.approx(3 * np.trace(a.conj().T @ b))
    assert renormalized_hs(3, a, a).imag == pytest.approx(0.0, abs=1e-12)
