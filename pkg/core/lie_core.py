#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Datos de Lie de SU(n): raíces, grupo de Weyl, fórmula de la dimensión,
densidad de Weyl, bases ortonormales del álgebra y cálculo espectral.

Convenciones:
    - Pesos en la base de pesos fundamentales; forma B = inversa de Cartan.
    - k* son las matrices hermíticas sin traza con <H1, H2> = tr(H1 H2).
    - Un elemento de Cartan se guarda por las coordenadas de su dual métrico.
"""

import re
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

import numpy as np

from core.errors import (
    NonDominantWeightError,
    SingularStratumError,
    UnsupportedFeatureError,
)
from models.group_models import (
    ChamberPoint,
    DominantProjection,
    GroupData,
    Weight,
    as_weight,
)
from utils.constants import REGULARITY_THRESHOLD
from utils.logger import get_logger

_logger = get_logger("LieCore")

_GROUP_PATTERN = re.compile(r"^\s*SU\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


def _cartan_matrix(n: int) -> np.ndarray:
    r = n - 1
    a = 2 * np.eye(r)
    for i in range(r - 1):
        a[i, i + 1] = a[i + 1, i] = -1
    return a


def _generate_weyl_group(simple_roots: np.ndarray) -> List[np.ndarray]:
    """Cierre por BFS de las reflexiones simples (matrices enteras)"""
    r = simple_roots.shape[0]
    generators = []
    for i in range(r):
        # s_i(lambda) = lambda - lambda_i alpha_i
        e_i = np.zeros(r)
        e_i[i] = 1.0
        generators.append(np.eye(r) - np.outer(simple_roots[i], e_i))

    identity = np.eye(r)
    seen = {tuple(identity.astype(int).ravel())}
    elements = [identity]
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for s in generators:
            ws = np.rint(s @ w)
            key = tuple(ws.astype(int).ravel())
            if key not in seen:
                seen.add(key)
                elements.append(ws)
                queue.append(ws)
    return elements


@lru_cache(maxsize=8)
def group_data(name: str) -> GroupData:
    """
    Construye los datos de Lie para un nombre de grupo 'SU(n)'

    Args:
        name: Nombre del grupo

    Returns:
        GroupData con raíces, forma, rho y grupo de Weyl

    Raises:
        UnsupportedFeatureError: Si el grupo no es SU(n) con n >= 2
    """
    match = _GROUP_PATTERN.match(name or "")
    if not match or int(match.group(1)) < 2:
        raise UnsupportedFeatureError(f"Grupo no soportado: {name!r}")

    n = int(match.group(1))
    cartan = _cartan_matrix(n)
    form = np.linalg.inv(cartan)
    simple_roots = cartan.copy()
    weyl = _generate_weyl_group(simple_roots)

    # Raíces positivas: órbita de las simples con coeficientes no negativos
    roots = {}
    inv_t = np.linalg.inv(cartan.T)
    for w in weyl:
        for alpha in simple_roots:
            root = np.rint(w @ alpha)
            coeffs = inv_t @ root
            if np.all(coeffs > -1e-9):
                roots[tuple(root.astype(int))] = root
    positive = np.array(
        sorted(roots.values(), key=lambda a: (round(float(np.sum(inv_t @ a))), tuple(-a))),
        dtype=float,
    )

    g = GroupData(
        name=f"SU({n})",
        n=n,
        cartan_matrix=cartan,
        form=form,
        simple_roots=simple_roots,
        positive_roots=positive,
        rho=np.ones(n - 1),
        weyl_group=weyl,
    )
    _logger.debug(
        f"Datos de {g.name}: {len(positive)} raíces positivas, |W| = {len(weyl)}"
    )
    return g


def is_dominant(g: GroupData, weight) -> bool:
    """True si todas las coordenadas del peso son no negativas"""
    return bool(np.all(np.asarray(weight, dtype=float) >= 0))


def check_dominant(g: GroupData, weight) -> Weight:
    """
    Valida que el peso sea entero, de longitud r y dominante

    Raises:
        NonDominantWeightError: Si alguna coordenada es negativa
    """
    values = np.atleast_1d(np.asarray(weight, dtype=float))
    if values.shape != (g.rank,):
        raise NonDominantWeightError(
            f"El peso {tuple(values)} no tiene {g.rank} coordenadas"
        )
    if not np.allclose(values, np.rint(values)):
        raise NonDominantWeightError(f"El peso {tuple(values)} no es entero")
    if not is_dominant(g, values):
        raise NonDominantWeightError(f"El peso {as_weight(values)} no es dominante")
    return as_weight(values)


def weyl_dimension(g: GroupData, weight) -> int:
    """
    Fórmula de la dimensión de Weyl: prod <lambda+rho, alpha> / <rho, alpha>

    Raises:
        NonDominantWeightError: Si el peso no es dominante
    """
    lam = np.asarray(check_dominant(g, weight), dtype=float)
    numer = g.root_pairings(lam + g.rho)
    denom = g.root_pairings(g.rho)
    return int(round(float(np.prod(numer / denom))))


def weyl_density(g: GroupData, xi) -> np.ndarray:
    """
    Densidad de Weyl P(xi) = prod_{alpha > 0} <alpha, xi>

    Admite lotes: xi de forma (..., r) devuelve (...,).
    """
    return np.prod(g.root_pairings(np.asarray(xi, dtype=float)), axis=-1)


def dominant_project(g: GroupData, xi) -> DominantProjection:
    """
    Representante en la cámara cerrada de la órbita de Weyl de xi

    Busca exhaustivamente en W el primer elemento w (orden BFS) con w xi
    dominante.
    """
    xi = np.asarray(xi, dtype=float)
    for w in g.weyl_group:
        candidate = w @ xi
        if np.all(candidate >= -1e-12):
            candidate = np.maximum(candidate, 0.0)
            point = ChamberPoint(candidate, regular=g.is_regular(candidate))
            return DominantProjection(point, w, int(round(np.linalg.det(w))))
    raise RuntimeError(f"No se encontró representante dominante para {xi}")


def enumerate_weights(g: GroupData, weight) -> List[Tuple[Weight, int]]:
    """
    Pesos de V_lambda con multiplicidad (tablas semiestándar de tipo A)

    Returns:
        Lista de (peso, multiplicidad) ordenada por altura decreciente
    """
    lam = check_dominant(g, weight)
    n = g.n
    rows = [int(sum(lam[k:])) for k in range(n - 1)]
    rows = [length for length in rows if length > 0]
    cells = [(i, j) for i, length in enumerate(rows) for j in range(length)]
    contents: Counter = Counter()
    table: Dict[Tuple[int, int], int] = {}

    def fill(index: int):
        if index == len(cells):
            count = [0] * n
            for value in table.values():
                count[value - 1] += 1
            contents[tuple(count)] += 1
            return
        i, j = cells[index]
        low = 1
        if j > 0:
            low = max(low, table[(i, j - 1)])
        if i > 0:
            low = max(low, table[(i - 1, j)] + 1)
        for value in range(low, n + 1):
            table[(i, j)] = value
            fill(index + 1)
        table.pop((i, j), None)

    fill(0)

    weights: Counter = Counter()
    for content, mult in contents.items():
        nu = tuple(int(content[i] - content[i + 1]) for i in range(n - 1))
        weights[nu] += mult

    def height(nu: Weight) -> float:
        return float(g.pair(np.asarray(nu, dtype=float), g.rho))

    return sorted(weights.items(), key=lambda item: (-height(item[0]), tuple(-v for v in item[0])))


def bs_points(g: GroupData, upper: float) -> List[np.ndarray]:
    """Puntos lambda+rho con lambda dominante y coordenadas <= upper"""
    top = int(np.floor(upper + 1e-12))
    points = []
    ranges = [range(1, top + 1)] * g.rank
    for combo in np.array(np.meshgrid(*ranges, indexing="ij")).reshape(g.rank, -1).T:
        points.append(combo.astype(float))
    points.sort(key=lambda p: tuple(p))
    return points

# ---------------------------------------------------------------------------
# Álgebra de Lie: bases, acción adjunta y cálculo espectral
# ---------------------------------------------------------------------------


@dataclass
class LieBasis:
    """Base ortonormal de su(n) (primero Cartan, luego planos de raíces)"""

    elements: np.ndarray
    cartan_weights: np.ndarray
    root_planes: List[Tuple[int, int, np.ndarray]]

    @property
    def hermitian(self) -> np.ndarray:
        """Base dual de k*: H_k = i X_k"""
        return 1j * self.elements


@lru_cache(maxsize=8)
def _lie_basis(name: str) -> LieBasis:
    g = group_data(name)
    n, r = g.n, g.rank

    # Cartan ortonormal a partir de las raíces simples
    diag = np.array([g.weight_to_diag(alpha) for alpha in g.simple_roots]).T
    q, _ = np.linalg.qr(diag)
    for m in range(r):
        pivot = np.flatnonzero(np.abs(q[:, m]) > 1e-12)[0]
        if q[pivot, m] < 0:
            q[:, m] = -q[:, m]
    elements = [-1j * np.diag(q[:, m]) for m in range(r)]
    cartan_weights = np.array([g.diag_to_weight(q[:, m]) for m in range(r)]).T

    planes = []
    for i in range(n):
        for j in range(i + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[i, j], a[j, i] = 1.0, -1.0
            b = np.zeros((n, n), dtype=complex)
            b[i, j] = b[j, i] = -1j
            elements.extend([a / np.sqrt(2.0), b / np.sqrt(2.0)])
            d = np.zeros(n)
            d[i], d[j] = 1.0, -1.0
            planes.append((len(elements) - 2, len(elements) - 1, g.diag_to_weight(d)))

    return LieBasis(np.array(elements), cartan_weights, planes)


def lie_basis(g: GroupData) -> LieBasis:
    """Base ortonormal de k respecto de <X, Y> = -tr(XY)"""
    return _lie_basis(g.name)


def algebra_coords(g: GroupData, x: np.ndarray) -> np.ndarray:
    """Coordenadas reales de X (antihermítica) en la base ortonormal"""
    basis = lie_basis(g).elements
    return -np.einsum("kij,...ji->...k", basis, x).real


def hermitian_coords(g: GroupData, h: np.ndarray) -> np.ndarray:
    """Coordenadas de H hermítica en la base dual H_k = i X_k"""
    return algebra_coords(g, -1j * np.asarray(h))


def from_algebra_coords(g: GroupData, c: np.ndarray) -> np.ndarray:
    return np.einsum("...k,kij->...ij", np.asarray(c), lie_basis(g).elements)


def from_hermitian_coords(g: GroupData, c: np.ndarray) -> np.ndarray:
    return 1j * from_algebra_coords(g, c)


def cartan_element(g: GroupData, y) -> np.ndarray:
    """Elemento de Cartan -i D(y) cuyo dual métrico tiene coordenadas y"""
    return -1j * np.diag(g.weight_to_diag(y))


def torus_element(g: GroupData, y) -> np.ndarray:
    """exp(Y) para el elemento de Cartan de coordenadas y"""
    return np.diag(np.exp(-1j * g.weight_to_diag(y)))


def character_value(g: GroupData, nu, t: np.ndarray) -> complex:
    """
    Carácter chi_nu(t) de un elemento diagonal del toro maximal

    Con exponentes c_k = sum_{i >= k} nu_i se tiene chi_nu = prod z_k^{c_k}.
    """
    z = np.diagonal(np.asarray(t))
    nu = np.asarray(nu, dtype=int)
    exps = np.concatenate([np.cumsum(nu[::-1])[::-1], [0]])
    return complex(np.prod(z ** exps))


def ad_matrix(g: GroupData, y: np.ndarray) -> np.ndarray:
    """Matriz real de ad_Y en la base ortonormal: [ad_Y]_kj = <X_k, [Y, X_j]>"""
    basis = lie_basis(g).elements
    commutators = np.einsum("ab,jbc->jac", y, basis) - np.einsum("jab,bc->jac", basis, y)
    return -np.einsum("kab,jba->kj", basis, commutators).real


def adjoint_matrix(g: GroupData, x: np.ndarray) -> np.ndarray:
    """Matriz ortogonal de Ad_x en la base ortonormal"""
    basis = lie_basis(g).elements
    conj = np.einsum("ab,jbc,cd->jad", x, basis, x.conj().T)
    return -np.einsum("kab,jba->kj", basis, conj).real


def hermitian_function(m: np.ndarray, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Aplica func espectralmente a una matriz hermítica (lotes en ejes iniciales)"""
    values, vectors = np.linalg.eigh(m)
    return np.einsum("...ij,...j,...kj->...ik", vectors, func(values), vectors.conj())


def expm_hermitian(m: np.ndarray) -> np.ndarray:
    """e^M para M hermítica"""
    return hermitian_function(m, np.exp)


def expm_antihermitian(x: np.ndarray) -> np.ndarray:
    """e^X para X antihermítica, vía eigh de iX"""
    return hermitian_function(1j * np.asarray(x), lambda mu: np.exp(-1j * mu))


def coadjoint_diagonalize(g: GroupData, h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonaliza H = x2 diag(d) x2^* con d decreciente y x2 en SU(n)

    Gauge: primera entrada no nula de cada columna real positiva y luego
    multiplicación por det^{-1/n} (rama principal).

    Returns:
        Tupla (x2, d)
    """
    values, vectors = np.linalg.eigh(h)
    values = values[::-1]
    vectors = vectors[:, ::-1].copy()
    for col in range(g.n):
        column = vectors[:, col]
        pivot = np.flatnonzero(np.abs(column) > 1e-12)[0]
        phase = column[pivot] / abs(column[pivot])
        vectors[:, col] = column / phase
    det = np.linalg.det(vectors)
    vectors = vectors * np.exp(-1j * np.angle(det) / g.n)
    return vectors, values


def random_group_element(n: int, rng: np.random.Generator) -> np.ndarray:
    """Elemento de SU(n) distribuido según Haar (QR de una matriz gaussiana)"""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return q * np.exp(-1j * np.angle(np.linalg.det(q)) / n)


def random_chamber_point(
    g: GroupData, rng: np.random.Generator, low: float = 0.2, high: float = 2.5
) -> np.ndarray:
    """Punto regular aleatorio de la cámara"""
    return rng.uniform(low, high, size=g.rank)


def regular_or_raise(g: GroupData, s, context: str, threshold: float = REGULARITY_THRESHOLD):
    """Lanza SingularStratumError si s no es regular"""
    if not g.is_regular(s, threshold):
        raise SingularStratumError(
            f"{context}: el punto {np.round(np.asarray(s, dtype=float), 12)} está en una pared de la cámara"
        )
