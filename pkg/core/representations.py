#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Representaciones irreducibles de SU(2), extensión holomorfa a SU(2)_C y
cuadraturas de Haar y del toro.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Tuple

import numpy as np
from scipy.linalg import schur

from core.errors import UnsupportedFeatureError
from core.lie_core import (
    check_dominant,
    enumerate_weights,
    expm_antihermitian,
    expm_hermitian,
    group_data,
    weyl_dimension,
)
from models.group_models import GroupData, Irrep, Weight
from utils.logger import get_logger
from utils.quadrature import gauss_legendre, periodic_rule, tensor_rule

_logger = get_logger("Representations")

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

# Base compacta X_a = -i sigma_a / 2, con [X_a, X_b] = eps_abc X_c
COMPACT_BASIS = -0.5j * PAULI


def _require_su2(g: GroupData, what: str):
    if g.n != 2:
        raise UnsupportedFeatureError(f"{what} solo está implementado para SU(2), no {g.name}")


def spin_matrices(highest: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Matrices de espín (J_x, J_y, J_z) de espín highest/2

    Base ordenada por m = j, j-1, ..., -j (convención de Condon-Shortley).
    """
    j = highest / 2.0
    m = j - np.arange(highest + 1)
    jp = np.zeros((highest + 1, highest + 1), dtype=complex)
    for k in range(1, highest + 1):
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jm = jp.conj().T
    return (jp + jm) / 2.0, (jp - jm) / 2.0j, np.diag(m).astype(complex)


@lru_cache(maxsize=64)
def _irrep(name: str, highest: Weight) -> Irrep:
    g = group_data(name)
    _require_su2(g, "Las representaciones irreducibles")
    n = highest[0]
    jx, jy, jz = spin_matrices(n)
    weights = [w for w, mult in enumerate_weights(g, highest) for _ in range(mult)]
    jp = jx + 1j * jy
    ir = Irrep(
        group=g.name,
        highest=highest,
        dim=weyl_dimension(g, highest),
        weights=weights,
        generators=np.array([-1j * jx, -1j * jy, -1j * jz]),
        chevalley={"e": jp, "f": jp.conj().T, "h": 2.0 * jz},
    )
    for arr in [ir.generators, *ir.chevalley.values()]:
        arr.setflags(write=False)
    return ir


def irrep(g: GroupData, weight) -> Irrep:
    """
    Representación irreducible de máximo peso lambda

    Raises:
        NonDominantWeightError: Si lambda no es dominante
        UnsupportedFeatureError: Si el grupo no es SU(2)
    """
    _require_su2(g, "Las representaciones irreducibles")
    return _irrep(g.name, check_dominant(g, weight))


def lie_log(x: np.ndarray) -> np.ndarray:
    """
    Logaritmo antihermítico sin traza de x en SU(n)

    Usa la forma de Schur compleja; los ángulos se corrigen restando 2*pi a
    los mayores para que la suma sea cero.
    """
    t, z = schur(np.asarray(x, dtype=complex), output="complex")
    angles = np.angle(np.diagonal(t)).copy()
    shift = int(np.rint(np.sum(angles) / (2 * np.pi)))
    order = np.argsort(angles)
    if shift > 0:
        angles[order[-shift:]] -= 2 * np.pi
    elif shift < 0:
        angles[order[:-shift]] += 2 * np.pi
    return z @ np.diag(1j * angles) @ z.conj().T


def rep_derivative(ir: Irrep, x: np.ndarray) -> np.ndarray:
    """dπ(X) para X en su(2) (matriz antihermítica sin traza)"""
    coeffs = np.real(1j * np.einsum("...ij,aji->...a", x, PAULI))
    return np.einsum("...a,aij->...ij", coeffs, ir.generators)


def rep_element(ir: Irrep, x: np.ndarray) -> np.ndarray:
    """π_lambda(x) = exp(dπ(log x))"""
    return expm_antihermitian(rep_derivative(ir, lie_log(x)))


def rep_complexified(ir: Irrep, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Extensión holomorfa π_lambda(x e^{iY}) = π(x) exp(i dπ(Y))

    Args:
        ir: Representación
        x: Elemento de SU(2)
        y: Elemento del álgebra (antihermítico)
    """
    return rep_element(ir, x) @ expm_hermitian(1j * rep_derivative(ir, y))


def weight_projector(ir: Irrep, nu: Weight) -> np.ndarray:
    """Proyector ortogonal sobre el espacio de peso nu"""
    return np.diag(ir.projector_diag(tuple(nu))).astype(complex)


def euler_element(phi, theta, psi) -> np.ndarray:
    """R_z(phi) R_y(theta) R_z(psi) en SU(2) (admite lotes)"""
    phi, theta, psi = np.broadcast_arrays(
        np.asarray(phi, dtype=float), np.asarray(theta, dtype=float), np.asarray(psi, dtype=float)
    )
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    a = np.exp(-0.5j * (phi + psi)) * c
    b = -np.exp(-0.5j * (phi - psi)) * s
    out = np.empty(phi.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a
    out[..., 0, 1] = b
    out[..., 1, 0] = -b.conj()
    out[..., 1, 1] = a.conj()
    return out


def rep_euler(ir: Irrep, phi, theta, psi) -> np.ndarray:
    """π_lambda(R_z(phi) R_y(theta) R_z(psi)) en lote"""
    m = np.real(np.diagonal(1j * ir.generators[2]))
    values, vectors = np.linalg.eigh(1j * ir.generators[1])
    theta = np.asarray(theta, dtype=float)
    d = np.einsum("ij,...j,kj->...ik", vectors, np.exp(-1j * theta[..., None] * values), vectors.conj())
    left = np.exp(-1j * np.asarray(phi, dtype=float)[..., None] * m)
    right = np.exp(-1j * np.asarray(psi, dtype=float)[..., None] * m)
    return left[..., :, None] * d * right[..., None, :]


@dataclass
class HaarRule:
    """Cuadratura de Haar de SU(2) en ángulos de Euler"""

    phi: np.ndarray
    theta: np.ndarray
    psi: np.ndarray
    weights: np.ndarray
    order: int

    @property
    def elements(self) -> np.ndarray:
        return euler_element(self.phi, self.theta, self.psi)

    def rep(self, ir: Irrep) -> np.ndarray:
        return rep_euler(ir, self.phi, self.theta, self.psi)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[Tuple[np.ndarray, float]]:
        return iter(zip(self.elements, self.weights))


@lru_cache(maxsize=16)
def _haar_rule(order: int) -> HaarRule:
    cos_nodes, cos_weights = gauss_legendre(-1.0, 1.0, order)
    angles, _ = periodic_rule(4 * np.pi, 2 * order)
    (points, weights) = tensor_rule(
        [
            (angles, np.full(2 * order, 1.0 / (2 * order))),
            (np.arccos(cos_nodes), cos_weights / 2.0),
            (angles, np.full(2 * order, 1.0 / (2 * order))),
        ]
    )
    return HaarRule(points[:, 0], points[:, 1], points[:, 2], weights, order)


def haar_quadrature(g: GroupData, order: int) -> HaarRule:
    """
    Cuadratura de Haar normalizada de SU(2)

    Exacta para productos de coeficientes de π_(m) y π_(n) con m + n < 2*order.
    Usa 4*order^3 nodos.
    """
    _require_su2(g, "La cuadratura de Haar")
    if order < 1:
        raise ValueError("El orden de la cuadratura debe ser positivo")
    return _haar_rule(int(order))


def torus_quadrature(g: GroupData, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Malla periódica del toro maximal: y = 2 pi sum u_i alpha_i, u en [0,1)^r

    Returns:
        Tupla (coordenadas y de forma (M, r), pesos normalizados)
    """
    u, w = periodic_rule(1.0, nodes)
    points, weights = tensor_rule([(u, w)] * g.rank)
    return 2 * np.pi * points @ g.simple_roots, weights
