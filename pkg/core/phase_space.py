#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Geometría de T*K: descomposición KAK, acciones de K x K y de T, forma
simpléctica, flujo del Hamiltoniano invariante e integración de Liouville.
"""

from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from core.convex import InvariantPotential, legendre_full
from core.errors import SingularStratumError
from core.lie_core import (
    coadjoint_diagonalize,
    expm_antihermitian,
    group_data,
    lie_basis,
    weyl_density,
)
from core.representations import haar_quadrature
from models.group_models import ChamberPoint, GroupData
from models.phase_models import CotangentPoint, KAKFrame, TangentVector
from utils.constants import REGULARITY_THRESHOLD
from utils.logger import get_logger
from utils.quadrature import composite_gauss_legendre, gauss_legendre, tensor_rule

_logger = get_logger("PhaseSpace")


def mu_inv(g: GroupData, p: CotangentPoint) -> ChamberPoint:
    """Representante en la cámara de la órbita coadjunta de xi"""
    values = np.linalg.eigvalsh(p.xi)[::-1]
    s = g.diag_to_weight(values)
    return ChamberPoint(np.maximum(s, 0.0), regular=g.is_regular(s))


def kak_decompose(g: GroupData, p: CotangentPoint) -> KAKFrame:
    """
    Descomposición x = x1 x2^{-1}, xi = Ad_{x2} xi_plus

    Raises:
        SingularStratumError: Si xi no es regular
    """
    x2, diag = coadjoint_diagonalize(g, p.xi)
    s = g.diag_to_weight(diag)
    if not g.is_regular(s, REGULARITY_THRESHOLD):
        raise SingularStratumError(
            f"kak_decompose: gap espectral {np.min(s):.3e} por debajo del umbral"
        )
    return KAKFrame(x1=p.x @ x2, xi_plus=ChamberPoint(s, regular=True), x2=x2)


def moment_maps(p: CotangentPoint) -> Tuple[np.ndarray, np.ndarray]:
    """(mu_L, mu_R) = (Ad_x xi, -xi)"""
    return p.x @ p.xi @ p.x.conj().T, -p.xi


def act_kk(k1: np.ndarray, k2: np.ndarray, p: CotangentPoint) -> CotangentPoint:
    """Acción de K x K: (k1 x k2^{-1}, Ad_{k2} xi)"""
    return CotangentPoint(k1 @ p.x @ k2.conj().T, k2 @ p.xi @ k2.conj().T)


def tinv_act(g: GroupData, p: CotangentPoint, t: np.ndarray) -> CotangentPoint:
    """
    Acción del toro en el estrato regular: (x x2 t^{-1} x2^{-1}, xi)

    Raises:
        SingularStratumError: Si xi no es regular
    """
    frame = kak_decompose(g, p)
    x2 = frame.x2
    return CotangentPoint(p.x @ x2 @ t.conj().T @ x2.conj().T, p.xi.copy())


def invariant_flow(h: InvariantPotential, p: CotangentPoint, t: float) -> CotangentPoint:
    """Flujo Hamiltoniano de H(x, xi) = h(xi): (x exp(t L_h(xi)), xi)"""
    return CotangentPoint(p.x @ expm_antihermitian(t * legendre_full(h, p.xi)), p.xi.copy())


def hamiltonian_vector_field(h: InvariantPotential, p: CotangentPoint) -> TangentVector:
    return TangentVector(legendre_full(h, p.xi), np.zeros_like(p.xi))


def pairing(h: np.ndarray, x: np.ndarray) -> float:
    """<H, X> = tr(H iX) entre k* y k"""
    return float(np.real(np.trace(h @ (1j * x))))


def symplectic_form(p: CotangentPoint, v1: TangentVector, v2: TangentVector) -> float:
    """
    Forma simpléctica canónica en trivialización izquierda

    omega(v1, v2) = <xidot2, xdot1> - <xidot1, xdot2> + <xi, [xdot1, xdot2]>
    """
    bracket = v1.xdot @ v2.xdot - v2.xdot @ v1.xdot
    return pairing(v2.xidot, v1.xdot) - pairing(v1.xidot, v2.xdot) + pairing(p.xi, bracket)


# ---------------------------------------------------------------------------
# Integración
# ---------------------------------------------------------------------------


def k_star_grid(
    g: GroupData, kind: str = "box", radius: float = 7.0, nodes: int = 40
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Malla de k* en coordenadas ortonormales

    Args:
        kind: 'box' (Gauss-Legendre tensorial) o 'spherical' (solo dim 3)
        radius: Semilado de la caja o radio de la bola
        nodes: Nodos por dirección

    Returns:
        Tupla (matrices hermíticas (N, n, n), pesos (N,))
    """
    herm = lie_basis(g).hermitian
    if kind == "box":
        rule = gauss_legendre(-radius, radius, nodes)
        coords, weights = tensor_rule([rule] * g.dim)
    elif kind == "spherical":
        if g.dim != 3:
            raise ValueError("La malla esférica requiere dim k* = 3")
        radial = gauss_legendre(0.0, radius, nodes)
        polar = gauss_legendre(-1.0, 1.0, nodes)
        azimuth = (2 * np.pi * np.arange(2 * nodes) / (2 * nodes), np.full(2 * nodes, np.pi / nodes))
        pts, weights = tensor_rule([radial, polar, azimuth])
        r, c, phi = pts[:, 0], pts[:, 1], pts[:, 2]
        sin = np.sqrt(np.clip(1.0 - c * c, 0.0, None))
        coords = np.stack([r * sin * np.cos(phi), r * sin * np.sin(phi), r * c], axis=-1)
        weights = weights * r * r
    else:
        raise ValueError(f"Tipo de malla desconocido: {kind!r}")
    return np.einsum("mk,kij->mij", coords, herm), weights


def liouville_integrate(
    g: GroupData,
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    haar_order: int,
    grid: Tuple[np.ndarray, np.ndarray],
) -> complex:
    """
    Integral de f respecto de dx dxi (Haar normalizada x Lebesgue de k*)

    Args:
        f: Función vectorizada f(x, xi) sobre pilas (..., n, n)
        haar_order: Orden de la cuadratura de Haar
        grid: Malla de k* (ver k_star_grid)
    """
    rule = haar_quadrature(g, haar_order)
    xis, weights = grid
    total = 0.0 + 0.0j
    for x, wx in rule:
        values = f(np.broadcast_to(x, xis.shape), xis)
        total += wx * np.sum(weights * values)
    return complex(total)


def chamber_rule(
    g: GroupData, upper: float, nodes: int = 64, panels: int = 4
) -> Tuple[np.ndarray, np.ndarray]:
    """Regla tensorial de Gauss-Legendre compuesta en [0, upper]^r"""
    rule = composite_gauss_legendre(0.0, upper, nodes, panels)
    return tensor_rule([rule] * g.rank)


def _gaussian_upper(g: GroupData) -> float:
    return float(12.0 / np.sqrt(np.min(np.linalg.eigvalsh(g.form))))


@lru_cache(maxsize=8)
def _weyl_constant(name: str) -> float:
    g = group_data(name)
    points, weights = chamber_rule(g, _gaussian_upper(g))
    integral = np.sum(weights * weyl_density(g, points) ** 2 * np.exp(-g.norm2(points)))
    return float(np.pi ** (g.dim / 2.0) / integral)


def weyl_constant(g: GroupData) -> float:
    """
    Constante c_K de la fórmula de integración de Weyl

    int_{k*} phi dxi = c_K int_{cámara} P(s)^2 phi(s) ds con ds de covolumen 1.
    Para SU(2) vale sqrt(2) pi.
    """
    return _weyl_constant(g.name)


def weyl_integrate_invariant(
    g: GroupData,
    phi: Callable[[np.ndarray], np.ndarray],
    upper: Optional[float] = None,
    nodes: int = 64,
    panels: int = 4,
) -> float:
    """
    Integral de una función Ad-invariante sobre k* por la fórmula de Weyl

    Args:
        phi: Función vectorizada sobre puntos de la cámara (M, r)
        upper: Truncamiento de la cámara (por defecto el de la gaussiana)
    """
    upper = _gaussian_upper(g) if upper is None else upper
    points, weights = chamber_rule(g, upper, nodes, panels)
    values = weyl_density(g, points) ** 2 * np.asarray(phi(points))
    return float(weyl_constant(g) * np.sum(weights * values))


def chamber_point_matrix(g: GroupData, s) -> np.ndarray:
    """Matriz diagonal de k* asociada a un punto de la cámara"""
    return np.diag(g.weight_to_diag(s)).astype(complex)
