#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from core.errors import NonDominantWeightError, SingularStratumError, UnsupportedFeatureError
from core.lie_core import (
    adjoint_matrix,
    algebra_coords,
    bs_points,
    character_value,
    check_dominant,
    coadjoint_diagonalize,
    dominant_project,
    enumerate_weights,
    expm_antihermitian,
    from_algebra_coords,
    group_data,
    regular_or_raise,
    torus_element,
    weyl_density,
    weyl_dimension,
)


def test_su2_group_data(su2):
    assert su2.rank == 1
    assert su2.dim == 3
    np.testing.assert_allclose(su2.form, [[0.5]])
    np.testing.assert_allclose(su2.rho, [1.0])
    np.testing.assert_allclose(su2.positive_roots, [[2.0]])
    assert len(su2.weyl_group) == 2


def test_su3_group_data(su3):
    assert su3.rank == 2
    assert len(su3.positive_roots) == 3
    assert len(su3.weyl_group) == 6
    np.testing.assert_allclose(su3.form @ su3.cartan_matrix, np.eye(2), atol=1e-14)
    # <alpha, alpha> = 2 para todas las raíces
    np.testing.assert_allclose(su3.norm2(su3.positive_roots), 2.0)


@pytest.mark.parametrize("name", ["SO(3)", "SU(1)", "", "sp(4)"])
def test_unsupported_group_names(name):
    with pytest.raises(UnsupportedFeatureError):
        group_data(name)


@pytest.mark.parametrize("lam, dim", [((0,), 1), ((1,), 2), ((3,), 4), ((7,), 8)])
def test_weyl_dimension_su2(su2, lam, dim):
    assert weyl_dimension(su2, lam) == dim


@pytest.mark.parametrize("lam, dim", [((0, 0), 1), ((1, 0), 3), ((0, 1), 3), ((1, 1), 8), ((2, 0), 6), ((3, 0), 10)])
def test_weyl_dimension_su3(su3, lam, dim):
    assert weyl_dimension(su3, lam) == dim


def test_non_dominant_weight_rejected(su2):
    with pytest.raises(NonDominantWeightError):
        weyl_dimension(su2, (-1,))
    with pytest.raises(NonDominantWeightError):
        check_dominant(su2, (1, 0))


def test_enumerate_weights_su2(su2):
    weights = enumerate_weights(su2, (3,))
    assert [nu for nu, _ in weights] == [(3,), (1,), (-1,), (-3,)]
    assert all(m == 1 for _, m in weights)


def test_enumerate_weights_adjoint_su3(su3):
    weights = dict(enumerate_weights(su3, (1, 1)))
    assert sum(weights.values()) == 8
    assert weights[(0, 0)] == 2
    assert weights[(1, 1)] == 1


def test_weyl_density(su2, su3):
    assert weyl_density(su2, [1.3]) == pytest.approx(1.3)
    assert weyl_density(su3, [1.0, 2.0]) == pytest.approx(1.0 * 2.0 * 3.0)
    np.testing.assert_allclose(weyl_density(su2, np.array([[1.0], [2.0]])), [1.0, 2.0])


def test_weyl_density_is_alternating(su2, su3, rng):
    for s in rng.uniform(0.1, 3.0, size=10):
        assert weyl_density(su2, [-s]) == pytest.approx(-weyl_density(su2, [s]))
    assert len(su3.weyl_group) == 6
    for _ in range(10):
        xi = rng.uniform(-2.0, 2.0, size=2)
        for w in su3.weyl_group:
            sign = round(np.linalg.det(w))
            assert weyl_density(su3, w @ xi) == pytest.approx(sign * weyl_density(su3, xi), abs=1e-12)


def test_dominant_project(su2, su3):
    proj = dominant_project(su2, [-1.5])
    np.testing.assert_allclose(proj.point.coords, [1.5])
    assert proj.sign == -1

    proj = dominant_project(su3, [-1.0, 3.0])
    assert np.all(proj.point.coords >= 0)
    # la proyección conserva la norma invariante
    assert su3.norm2(proj.point.coords) == pytest.approx(su3.norm2([-1.0, 3.0]))


def test_bs_points(su2, su3):
    assert [p.tolist() for p in bs_points(su2, 5)] == [[1.0], [2.0], [3.0], [4.0], [5.0]]
    assert len(bs_points(su3, 2)) == 4


def test_character_of_torus_element(su2):
    for y in [0.0, 0.7, 2.1, -3.3]:
        t = torus_element(su2, [y])
        expected = np.exp(-1j * su2.pair([1.0], [y]))
        assert character_value(su2, (1,), t) == pytest.approx(expected)
        assert character_value(su2, (0,), t) == pytest.approx(1.0)


def test_random_group_element_is_special_unitary(random_element):
    for n in (2, 3):
        x = random_element(n)
        np.testing.assert_allclose(x @ x.conj().T, np.eye(n), atol=1e-12)
        assert np.linalg.det(x) == pytest.approx(1.0)


def test_coadjoint_diagonalize_gauge(su2, random_element):
    x2 = random_element(2)
    h = x2 @ np.diag([0.8, -0.8]) @ x2.conj().T
    u, d = coadjoint_diagonalize(su2, h)
    np.testing.assert_allclose(d, [0.8, -0.8], atol=1e-12)
    np.testing.assert_allclose(u @ np.diag(d) @ u.conj().T, h, atol=1e-12)
    assert np.linalg.det(u) == pytest.approx(1.0)


def test_adjoint_matrix_is_orthogonal(su3, random_element):
    ad = adjoint_matrix(su3, random_element(3))
    np.testing.assert_allclose(ad @ ad.T, np.eye(8), atol=1e-12)


def test_algebra_coords_round_trip(su2, rng):
    c = rng.standard_normal(3)
    x = from_algebra_coords(su2, c)
    np.testing.assert_allclose(algebra_coords(su2, x), c, atol=1e-14)
    u = expm_antihermitian(x)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


def test_regular_or_raise(su2):
    regular_or_raise(su2, [0.5], "prueba")
    with pytest.raises(SingularStratumError):
        regular_or_raise(su2, [0.0], "prueba")
