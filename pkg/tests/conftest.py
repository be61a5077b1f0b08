#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.convex import quadratic_potential, quartic_potential, zero_potential  # noqa: E402
from core.lie_core import group_data, random_group_element  # noqa: E402
from models.phase_models import CotangentPoint  # noqa: E402


@pytest.fixture(scope="session")
def su2():
    return group_data("SU(2)")


@pytest.fixture(scope="session")
def su3():
    return group_data("SU(3)")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def random_element(rng):
    """Fábrica de elementos de SU(n) distribuidos según Haar"""

    def make(n: int = 2) -> np.ndarray:
        return random_group_element(n, rng)

    return make


@pytest.fixture
def make_point(su2, rng):
    """Fábrica de puntos regulares (x, Ad_{x2} xi_plus) de T*SU(2)"""

    def make(s=None) -> CotangentPoint:
        s = rng.uniform(0.3, 2.0) if s is None else s
        x = random_group_element(2, rng)
        x2 = random_group_element(2, rng)
        xi = x2 @ np.diag(su2.weight_to_diag([s])) @ x2.conj().T
        return CotangentPoint(x, xi)

    return make


@pytest.fixture
def sample_points(make_point):
    return [make_point() for _ in range(5)]


@pytest.fixture
def random_matrix(rng):
    def make(d: int) -> np.ndarray:
        return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))

    return make


@pytest.fixture(scope="session")
def zero(su2):
    return zero_potential(su2)


@pytest.fixture(scope="session")
def quadratic(su2):
    return quadratic_potential(su2)


@pytest.fixture(scope="session")
def quartic(su2):
    return quartic_potential(su2)
