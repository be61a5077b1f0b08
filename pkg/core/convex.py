#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Potenciales convexos invariantes, transformada de Legendre, Hessianos y
el difeomorfismo de Moser entre estructuras de Kähler.
"""

from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from core.errors import ConfigError, ConvergenceError
from core.lie_core import (
    adjoint_matrix,
    coadjoint_diagonalize,
    lie_basis,
    regular_or_raise,
)
from models.group_models import ChamberPoint, GroupData
from models.phase_models import CotangentPoint, HessianBlocks
from utils.constants import FD_STEP, NEWTON_MAX_ITERATIONS, NEWTON_TOLERANCE
from utils.logger import get_logger

_logger = get_logger("Convex")


class InvariantPotential(ABC):
    """
    Función Ad-invariante y convexa sobre k*, descrita por su restricción
    W-invariante a t* en coordenadas de pesos.
    """

    def __init__(self, group: GroupData, tag: str, uniformly_convex: bool = True):
        self.group = group
        self.tag = tag
        self.uniformly_convex = uniformly_convex

    @abstractmethod
    def value(self, s) -> Any:
        """h(s) para s de forma (..., r)"""

    @abstractmethod
    def gradient(self, s) -> np.ndarray:
        """Dual métrico del diferencial: L(s) = B^{-1} grad h"""

    @abstractmethod
    def euclidean_hessian(self, s) -> np.ndarray:
        """Hessiano en coordenadas de pesos (r x r)"""

    @property
    def is_zero(self) -> bool:
        return False

    def hessian(self, s) -> np.ndarray:
        """Operador dL/ds en el marco métrico: B^{-1} grad^2 h"""
        return np.linalg.solve(self.group.form, self.euclidean_hessian(s))

    def covolume_hessian(self, s) -> np.ndarray:
        """Hessiano relativo a la forma de covolumen 1"""
        return self.hessian(s) / self.group.covolume_factor

    def value_full(self, h: np.ndarray) -> float:
        """h evaluada en una matriz hermítica sin traza arbitraria"""
        values = np.linalg.eigvalsh(h)[::-1]
        return float(self.value(self.group.diag_to_weight(values)))

    def scaled(self, factor: float) -> "InvariantPotential":
        return CompositePotential(self.group, [(float(factor), self)])

    def __add__(self, other: "InvariantPotential") -> "InvariantPotential":
        if not isinstance(other, InvariantPotential):
            return NotImplemented
        return CompositePotential(self.group, [(1.0, self), (1.0, other)])

    def __mul__(self, factor: float) -> "InvariantPotential":
        return self.scaled(factor)

    __rmul__ = __mul__

    def to_dict(self) -> Dict[str, Any]:
        return {"tag": self.tag, "group": self.group.name}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.tag})"


class RadialPotential(InvariantPotential):
    """h = sum_k c_k q^k con q = |xi|^2 (polinomio en el Casimir cuadrático)"""

    def __init__(self, group: GroupData, coefficients: Dict[int, float]):
        coefficients = {int(k): float(v) for k, v in coefficients.items() if float(v) != 0.0}
        if any(k < 1 for k in coefficients):
            raise ValueError("Los exponentes del potencial radial deben ser >= 1")
        if not coefficients:
            tag = "zero"
        elif set(coefficients) == {1}:
            tag = "quadratic-Casimir"
        else:
            tag = "polynomial-in-Casimirs"
        convex = coefficients.get(1, 0.0) > 0 and all(v >= 0 for v in coefficients.values())
        super().__init__(group, tag, uniformly_convex=convex)
        self.coefficients = dict(sorted(coefficients.items()))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def _phi(self, q, derivative: int = 0):
        q = np.asarray(q, dtype=float)
        total = np.zeros_like(q)
        for k, c in self.coefficients.items():
            if k < derivative:
                continue
            factor = 1.0
            for j in range(derivative):
                factor *= k - j
            total = total + c * factor * q ** (k - derivative)
        return total

    def value(self, s):
        return self._phi(self.group.norm2(s))

    def gradient(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return 2.0 * self._phi(self.group.norm2(s), 1)[..., None] * s

    def euclidean_hessian(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        q = self.group.norm2(s)
        bs = s @ self.group.form
        d1 = self._phi(q, 1)[..., None, None]
        d2 = self._phi(q, 2)[..., None, None]
        return 2.0 * d1 * self.group.form + 4.0 * d2 * bs[..., :, None] * bs[..., None, :]

    def hessian(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        q = self.group.norm2(s)
        bs = s @ self.group.form
        eye = np.eye(self.group.rank)
        d1 = self._phi(q, 1)[..., None, None]
        d2 = self._phi(q, 2)[..., None, None]
        return 2.0 * d1 * eye + 4.0 * d2 * s[..., :, None] * bs[..., None, :]

    def scaled(self, factor: float) -> InvariantPotential:
        return RadialPotential(self.group, {k: factor * c for k, c in self.coefficients.items()})

    def __add__(self, other: InvariantPotential) -> InvariantPotential:
        if isinstance(other, RadialPotential):
            merged = dict(self.coefficients)
            for k, c in other.coefficients.items():
                merged[k] = merged.get(k, 0.0) + c
            return RadialPotential(self.group, merged)
        return super().__add__(other)

    def same_as(self, other: InvariantPotential) -> bool:
        return isinstance(other, RadialPotential) and self.coefficients == other.coefficients

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["coefficients"] = {str(k): c for k, c in self.coefficients.items()}
        return data


class CustomPotential(InvariantPotential):
    """
    Potencial dado por un callable sobre coordenadas de pesos

    Las derivadas se calculan por diferencias centrales; la invarianza de
    Weyl es responsabilidad del llamador (ver check_weyl_invariance).
    """

    def __init__(
        self,
        group: GroupData,
        func: Callable[[np.ndarray], float],
        tag: str = "custom",
        uniformly_convex: bool = True,
        step: float = FD_STEP,
    ):
        super().__init__(group, tag, uniformly_convex)
        self.func = func
        self.step = step

    def _apply(self, s, func: Callable[[np.ndarray], Any], shape: Tuple[int, ...]) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        flat = s.reshape(-1, self.group.rank)
        out = np.array([func(row) for row in flat], dtype=float)
        return out.reshape(s.shape[:-1] + shape)

    def value(self, s):
        return self._apply(s, lambda row: float(self.func(row)), ())

    def _euclidean_gradient(self, row: np.ndarray) -> np.ndarray:
        grad = np.zeros_like(row)
        for i in range(len(row)):
            h = self.step * max(1.0, abs(row[i]))
            e = np.zeros_like(row)
            e[i] = h
            grad[i] = (self.func(row + e) - self.func(row - e)) / (2 * h)
        return grad

    def gradient(self, s) -> np.ndarray:
        return self._apply(
            s,
            lambda row: np.linalg.solve(self.group.form, self._euclidean_gradient(row)),
            (self.group.rank,),
        )

    def euclidean_hessian(self, s) -> np.ndarray:
        def hess(row: np.ndarray) -> np.ndarray:
            r = len(row)
            out = np.zeros((r, r))
            for j in range(r):
                h = self.step * max(1.0, abs(row[j]))
                e = np.zeros_like(row)
                e[j] = h
                out[:, j] = (self._euclidean_gradient(row + e) - self._euclidean_gradient(row - e)) / (2 * h)
            return 0.5 * (out + out.T)

        return self._apply(s, hess, (self.group.rank, self.group.rank))


class CompositePotential(InvariantPotential):
    """Combinación lineal sum_i c_i h_i de potenciales invariantes"""

    def __init__(self, group: GroupData, terms: List[Tuple[float, InvariantPotential]]):
        flat: List[Tuple[float, InvariantPotential]] = []
        for coef, pot in terms:
            if isinstance(pot, CompositePotential):
                flat.extend((coef * c, p) for c, p in pot.terms)
            else:
                flat.append((coef, pot))
        convex = all(c >= 0 for c, _ in flat) and any(c > 0 and p.uniformly_convex for c, p in flat)
        tag = " + ".join(f"{c:g}*{p.tag}" for c, p in flat)
        super().__init__(group, tag, uniformly_convex=convex)
        self.terms = flat

    @property
    def is_zero(self) -> bool:
        return all(c == 0 or p.is_zero for c, p in self.terms)

    def value(self, s):
        return sum(c * np.asarray(p.value(s)) for c, p in self.terms)

    def gradient(self, s) -> np.ndarray:
        return sum(c * p.gradient(s) for c, p in self.terms)

    def euclidean_hessian(self, s) -> np.ndarray:
        return sum(c * p.euclidean_hessian(s) for c, p in self.terms)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["terms"] = [{"coefficient": c, "potential": p.to_dict()} for c, p in self.terms]
        return data


def zero_potential(g: GroupData) -> RadialPotential:
    return RadialPotential(g, {})


def quadratic_potential(g: GroupData) -> RadialPotential:
    """h = |xi|^2 / 2"""
    return RadialPotential(g, {1: 0.5})


def quartic_potential(g: GroupData) -> RadialPotential:
    """h = |xi|^2 / 2 + |xi|^4 / 4, con L = (1 + |xi|^2) xi"""
    return RadialPotential(g, {1: 0.5, 2: 0.25})


def potential_from_spec(g: GroupData, spec: str) -> InvariantPotential:
    """
    Construye un potencial a partir de una etiqueta de configuración

    Formatos: 'zero', 'quadratic', 'quartic', 'radial:c1,c2,...'

    Raises:
        ConfigError: Si la etiqueta no es reconocida
    """
    text = (spec or "").strip().lower()
    if text == "zero":
        return zero_potential(g)
    if text == "quadratic":
        return quadratic_potential(g)
    if text == "quartic":
        return quartic_potential(g)
    if text.startswith("radial:"):
        try:
            values = [float(v) for v in text.split(":", 1)[1].split(",") if v.strip()]
        except ValueError as e:
            raise ConfigError(f"Coeficientes radiales inválidos en {spec!r}: {e}")
        return RadialPotential(g, {k + 1: v for k, v in enumerate(values)})
    raise ConfigError(f"Potencial desconocido: {spec!r}")


def check_weyl_invariance(h: InvariantPotential, samples: np.ndarray, tol: float = 1e-10) -> bool:
    """Comprueba h(w s) = h(s) sobre muestras de t*"""
    base = np.asarray(h.value(samples))
    for w in h.group.weyl_group:
        if not np.allclose(np.asarray(h.value(samples @ w.T)), base, atol=tol, rtol=tol):
            return False
    return True


# ---------------------------------------------------------------------------
# Transformada de Legendre
# ---------------------------------------------------------------------------


def legendre(h: InvariantPotential, xi_plus) -> np.ndarray:
    """
    L_h(xi_plus) como elemento de Cartan (coordenadas de su dual métrico)

    Para h cuadrática coincide con el dual canónico de xi_plus.
    """
    return h.gradient(np.asarray(xi_plus, dtype=float))


def legendre_full(h: InvariantPotential, xi: np.ndarray) -> np.ndarray:
    """
    L_h(xi) = Ad_{x2} L_h(xi_plus) para xi en el estrato regular

    Returns:
        Elemento antihermítico de k

    Raises:
        SingularStratumError: Si xi no es regular
    """
    g = h.group
    x2, diag = coadjoint_diagonalize(g, xi)
    s = g.diag_to_weight(diag)
    regular_or_raise(g, s, "legendre_full")
    y = legendre(h, s)
    return -1j * (x2 * g.weight_to_diag(y)) @ x2.conj().T


def legendre_inverse(
    h: InvariantPotential,
    y,
    start: Optional[np.ndarray] = None,
    tol: float = NEWTON_TOLERANCE,
    max_iter: int = NEWTON_MAX_ITERATIONS,
) -> ChamberPoint:
    """
    Resuelve L_h(xi) = Y con Newton amortiguado (reducción del paso a la mitad)

    Args:
        h: Potencial uniformemente convexo
        y: Elemento de Cartan dominante (coordenadas del dual métrico)
        start: Punto inicial (por defecto Y)

    Raises:
        ConvergenceError: Si no converge en max_iter iteraciones
    """
    g = h.group
    y = np.asarray(y, dtype=float)
    xi = np.array(y if start is None else start, dtype=float)
    scale = max(1.0, float(np.sqrt(max(g.norm2(y), 0.0))))

    def residual_norm(r: np.ndarray) -> float:
        return float(np.sqrt(max(g.norm2(r), 0.0)))

    residual = legendre(h, xi) - y
    for iteration in range(max_iter):
        norm = residual_norm(residual)
        if norm <= tol * scale:
            _logger.debug(f"legendre_inverse convergió en {iteration} iteraciones")
            return ChamberPoint(xi, regular=g.is_regular(xi))
        step = np.linalg.solve(h.hessian(xi), -residual)
        alpha = 1.0
        for _ in range(40):
            trial = xi + alpha * step
            trial_residual = legendre(h, trial) - y
            if residual_norm(trial_residual) < (1.0 - 1e-4 * alpha) * norm:
                break
            alpha *= 0.5
        xi, residual = trial, trial_residual

    raise ConvergenceError(
        f"legendre_inverse no convergió en {max_iter} iteraciones "
        f"(residuo {residual_norm(residual):.3e})"
    )


# ---------------------------------------------------------------------------
# Hessianos
# ---------------------------------------------------------------------------


def hessian_full(h: InvariantPotential, xi_plus) -> HessianBlocks:
    """
    Bloques del Hessiano en un punto regular: toro (marco métrico) y
    autovalores <alpha, L_h>/<alpha, xi> en cada plano de raíz

    Raises:
        SingularStratumError: Si xi_plus no es regular
    """
    g = h.group
    s = np.asarray(xi_plus, dtype=float)
    regular_or_raise(g, s, "hessian_full")
    lvec = legendre(h, s)
    numer = g.root_pairings(lvec)
    denom = g.root_pairings(s)
    roots = [(alpha, float(a / b)) for alpha, a, b in zip(g.positive_roots, numer, denom)]
    return HessianBlocks(torus=h.hessian(s), roots=roots)


def block_hessian_matrix(h: InvariantPotential, xi_plus) -> np.ndarray:
    """Hessiano completo en la base ortonormal, en un punto de la cámara"""
    g = h.group
    basis = lie_basis(g)
    blocks = hessian_full(h, xi_plus)
    dim, r = g.dim, g.rank
    out = np.zeros((dim, dim))
    cw = basis.cartan_weights
    out[:r, :r] = cw.T @ g.form @ blocks.torus @ cw
    lookup = {tuple(np.rint(alpha).astype(int)): value for alpha, value in blocks.roots}
    for k1, k2, alpha in basis.root_planes:
        value = lookup[tuple(np.rint(alpha).astype(int))]
        out[k1, k1] = out[k2, k2] = value
    return out


def full_hessian_matrix(h: InvariantPotential, xi: np.ndarray) -> np.ndarray:
    """
    Derivada de L_h en xi (hermítica regular) como matriz dim x dim

    Columna j: coordenadas de dL_h(H_j) en la base X_k.
    """
    g = h.group
    x2, diag = coadjoint_diagonalize(g, xi)
    s = g.diag_to_weight(diag)
    ad = adjoint_matrix(g, x2)
    return ad @ block_hessian_matrix(h, s) @ ad.T


def laplace_phase(h: InvariantPotential, weight, xi_plus) -> Any:
    """
    psi_h^lambda(xi) = h(a) - h(xi) + <xi - a, L_h(xi)> con a = lambda + rho

    Nula exactamente en xi = a y positiva en otro caso.
    """
    g = h.group
    a = np.asarray(weight, dtype=float) + g.rho
    s = np.asarray(xi_plus, dtype=float)
    return h.value(a) - h.value(s) + g.pair(s - a, legendre(h, s))


# ---------------------------------------------------------------------------
# Difeomorfismo de Moser
# ---------------------------------------------------------------------------


def moser_map(
    g_pot: InvariantPotential, h: InvariantPotential, t: float, p: CotangentPoint
) -> CotangentPoint:
    """
    psi_t(x, xi) = (x, L_g^{-1}(L_{g+th}(xi)))

    Se calcula en la cámara y se transporta con Ad_{x2}; t = 0 es la identidad.
    """
    if t == 0:
        return CotangentPoint(p.x.copy(), p.xi.copy())
    g = g_pot.group
    x2, diag = coadjoint_diagonalize(g, p.xi)
    s = g.diag_to_weight(diag)
    target = legendre(g_pot, s) + t * legendre(h, s)
    eta = legendre_inverse(g_pot, target, start=s)
    new_xi = (x2 * g.weight_to_diag(eta.coords)) @ x2.conj().T
    return CotangentPoint(p.x.copy(), new_xi)
