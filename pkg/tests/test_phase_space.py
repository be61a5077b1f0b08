#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from core.errors import SingularStratumError
from core.lie_core import from_algebra_coords, from_hermitian_coords, torus_element
from core.phase_space import (
    act_kk,
    chamber_point_matrix,
    hamiltonian_vector_field,
    invariant_flow,
    k_star_grid,
    kak_decompose,
    liouville_integrate,
    moment_maps,
    mu_inv,
    symplectic_form,
    tinv_act,
    weyl_integrate_invariant,
)
from models.phase_models import CotangentPoint, TangentVector


def test_kak_decompose_reconstructs_point(su2, make_point):
    for _ in range(100):
        p = make_point()
        frame = kak_decompose(su2, p)
        np.testing.assert_allclose(frame.x1 @ frame.x2.conj().T, p.x, atol=1e-10)
        xi_plus = chamber_point_matrix(su2, frame.xi_plus.coords)
        np.testing.assert_allclose(frame.x2 @ xi_plus @ frame.x2.conj().T, p.xi, atol=1e-10)
        assert np.linalg.det(frame.x2) == pytest.approx(1.0)


def test_kak_decompose_is_deterministic(su2, make_point):
    p = make_point()
    first, second = kak_decompose(su2, p), kak_decompose(su2, p)
    np.testing.assert_array_equal(first.x1, second.x1)
    np.testing.assert_array_equal(first.x2, second.x2)


def test_kak_decompose_rejects_singular(su2, random_element):
    p = CotangentPoint(random_element(), np.zeros((2, 2)))
    with pytest.raises(SingularStratumError):
        kak_decompose(su2, p)


def test_mu_inv_is_kk_invariant(su2, make_point, random_element):
    p = make_point(1.4)
    q = act_kk(random_element(), random_element(), p)
    np.testing.assert_allclose(mu_inv(su2, q).coords, [1.4], atol=1e-12)
    assert mu_inv(su2, CotangentPoint(np.eye(2), np.zeros((2, 2)))).regular is False


def test_moment_maps(su2, make_point):
    p = make_point()
    mu_l, mu_r = moment_maps(p)
    np.testing.assert_allclose(mu_r, -p.xi)
    np.testing.assert_allclose(mu_l, p.x @ p.xi @ p.x.conj().T)
    # ambos momentos comparten la órbita coadjunta
    np.testing.assert_allclose(np.linalg.eigvalsh(mu_l), np.linalg.eigvalsh(p.xi), atol=1e-12)


def test_tinv_act_preserves_fiber(su2, make_point):
    p = make_point()
    t = torus_element(su2, [0.77])
    q = tinv_act(su2, p, t)
    np.testing.assert_allclose(q.xi, p.xi)
    np.testing.assert_allclose(mu_inv(su2, q).coords, mu_inv(su2, p).coords)
    # la acción del toro es un morfismo: t1 t2 = t2 t1
    t2 = torus_element(su2, [1.9])
    a = tinv_act(su2, tinv_act(su2, p, t), t2)
    b = tinv_act(su2, tinv_act(su2, p, t2), t)
    np.testing.assert_allclose(a.x, b.x, atol=1e-10)


def test_invariant_flow_is_a_flow(su2, quartic, make_point):
    p = make_point()
    q = invariant_flow(quartic, invariant_flow(quartic, p, 0.4), 0.9)
    r = invariant_flow(quartic, p, 1.3)
    np.testing.assert_allclose(q.x, r.x, atol=1e-10)
    back = invariant_flow(quartic, r, -1.3)
    np.testing.assert_allclose(back.x, p.x, atol=1e-10)
    np.testing.assert_allclose(r.xi, p.xi)


def test_hamiltonian_vector_field_matches_flow(su2, quartic, make_point):
    p = make_point()
    eps = 1e-6
    q = invariant_flow(quartic, p, eps)
    xdot = hamiltonian_vector_field(quartic, p).xdot
    # trivialización izquierda: x^{-1} dx/dt
    np.testing.assert_allclose(p.x.conj().T @ (q.x - p.x) / eps, xdot, atol=1e-5)


def test_symplectic_form_is_antisymmetric_and_nondegenerate(su2, make_point, rng):
    p = make_point()

    def random_vector():
        return TangentVector(
            from_algebra_coords(su2, rng.standard_normal(3)),
            from_hermitian_coords(su2, rng.standard_normal(3)),
        )

    v1, v2 = random_vector(), random_vector()
    assert symplectic_form(p, v1, v2) == pytest.approx(-symplectic_form(p, v2, v1))
    assert symplectic_form(p, v1, v1) == pytest.approx(0.0, abs=1e-12)

    basis = []
    for k in range(3):
        e = np.zeros(3)
        e[k] = 1.0
        basis.append(TangentVector(from_algebra_coords(su2, e), np.zeros((2, 2))))
        basis.append(TangentVector(np.zeros((2, 2)), from_hermitian_coords(su2, e)))
    matrix = np.array([[symplectic_form(p, a, b) for b in basis] for a in basis])
    assert abs(np.linalg.det(matrix)) > 1e-8


def test_weyl_integration_of_gaussian(su2):
    value = weyl_integrate_invariant(su2, lambda s: np.exp(-0.5 * su2.norm2(s)))
    assert value == pytest.approx((2 * np.pi) ** 1.5, rel=1e-8)


def test_liouville_integrate_matches_weyl_formula(su2):
    def f(x, xi):
        tr_x = np.trace(x, axis1=-2, axis2=-1)
        tr_xi2 = np.real(np.trace(xi @ xi, axis1=-2, axis2=-1))
        return np.abs(tr_x) ** 2 * np.exp(-0.5 * tr_xi2)

    grid = k_star_grid(su2, kind="spherical", radius=10.0, nodes=40)
    value = liouville_integrate(su2, f, 2, grid)
    radial = weyl_integrate_invariant(su2, lambda s: np.exp(-0.5 * su2.norm2(s)))
    assert value.real == pytest.approx(radial, rel=1e-6)
    assert abs(value.imag) < 1e-10
