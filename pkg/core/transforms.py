#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Transformada de estados coherentes generalizada, operador cuántico Q(h),
autovalores del calor de Hall, transformada de Fourier en K, identidad de
Plancherel e isomorfismo Phi sobre bloques de endomorfismos.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Union

import numpy as np

from core.convex import InvariantPotential, RadialPotential, legendre_full, moser_map
from core.kahler import kahler_potential, matrix_coeff, state_eval
from core.kw_limit import kw_state
from core.lie_core import check_dominant
from core.representations import haar_quadrature, irrep, rep_complexified, rep_element
from models.group_models import GroupData, Weight
from models.phase_models import CotangentPoint
from models.state_models import (
    Convention,
    IsotypicVector,
    KWStateData,
    PlancherelResult,
    QuantumState,
    StateTag,
    StateValue,
    TagKind,
    TransformSpec,
)
from utils.logger import get_logger

_logger = get_logger("Transforms")


def quantum_op(h: InvariantPotential, v: IsotypicVector) -> IsotypicVector:
    """Q(h): el bloque lambda se multiplica por h(lambda + rho)"""
    g = h.group
    blocks = {
        lam: float(h.value(np.asarray(lam, dtype=float) + g.rho)) * a for lam, a in v.blocks.items()
    }
    return IsotypicVector(blocks, v.tag)


def hall_heat_eigenvalue(g: GroupData, weight) -> float:
    """1/2 <lambda + rho, lambda + rho> - 1/2 <rho, rho>"""
    lam = np.asarray(check_dominant(g, weight), dtype=float)
    return float(0.5 * g.norm2(lam + g.rho) - 0.5 * g.norm2(g.rho))


def _same_ray(a: Optional[InvariantPotential], b: InvariantPotential) -> bool:
    if a is None:
        return False
    if a is b:
        return True
    return isinstance(a, RadialPotential) and a.same_as(b)


def target_tag(spec: TransformSpec) -> StateTag:
    """
    Etiqueta de llegada de la transformada

    Schrödinger -> Kähler(0, h, t); Kähler(g, h, t0) -> Kähler(g, h, t0 + t)
    si el rayo coincide, Kähler(g_t0, h, t) en otro caso.
    """
    source = spec.source
    h = spec.potential
    if source.kind is TagKind.KIRWIN_WU:
        raise ValueError("La transformada no está definida desde la polarización de Kirwin-Wu")
    if source.kind is TagKind.SCHRODINGER:
        if spec.time == 0:
            return source
        zero = RadialPotential(h.group, {})
        return StateTag(TagKind.KAHLER, base=zero, ray=h, time=float(spec.time))
    if _same_ray(source.ray, h):
        return StateTag(TagKind.KAHLER, base=source.base, ray=source.ray, time=source.time + spec.time)
    return StateTag(TagKind.KAHLER, base=source.potential(), ray=h, time=float(spec.time))


def gcst(spec: TransformSpec, v: IsotypicVector) -> IsotypicVector:
    """
    C_{t,h} = e^{t h_hat} e^{-t Q(h)} sobre bloques

    Es el transporte paralelo en el marco sigma: los coeficientes no cambian
    y solo se reetiqueta la polarización.
    """
    out = v.copy()
    out.tag = target_tag(TransformSpec(spec.potential, spec.time, v.tag))
    return out


def transport_state(spec: TransformSpec, st: QuantumState) -> QuantumState:
    """sigma^g_{lambda, A} -> sigma^{g + t h}_{lambda, A}"""
    tag = target_tag(TransformSpec(spec.potential, spec.time, st.tag))
    return QuantumState(st.weight, st.matrix.copy(), tag, st.convention, st.group)


def transport_pointwise(
    g: GroupData, spec: TransformSpec, st: QuantumState, p: CotangentPoint
) -> StateValue:
    """
    e^{t h_hat} sigma evaluado en p, en el marco de semiforma de llegada

    El factor holomorfo se obtiene por el pull-back de Moser f^g o psi_t; desde
    Schrödinger es la continuación analítica tr(pi(x e^{i t L_h}) A). El
    resultado difiere del estado de llegada en el factor e^{t h(lambda + rho)}.
    """
    if spec.time == 0:
        return state_eval(st, p, group=g)
    source = st.tag
    target = transport_state(spec, st)
    g_t = target.tag.potential()
    ir = irrep(g, st.weight)
    a = np.asarray(ir.highest, dtype=float) + g.rho

    if source.kind is TagKind.SCHRODINGER:
        y = spec.time * legendre_full(spec.potential, p.xi)
        holomorphic = complex(np.trace(rep_complexified(ir, p.x, y) @ st.matrix))
        base_value = 0.0
    elif source.potential() is None or source.potential().is_zero:
        holomorphic = matrix_coeff(g_t, ir, st.matrix, p)
        base_value = 0.0
    else:
        g_src = source.potential()
        holomorphic = matrix_coeff(g_src, ir, st.matrix, moser_map(g_src, spec.potential, spec.time, p))
        base_value = float(g_src.value(a))

    reference = state_eval(target, p, group=g)
    coefficient = np.exp(-base_value - kahler_potential(g_t, p)) * holomorphic
    if st.convention is Convention.S:
        # mismos factores de marco que el estado de llegada
        sigma_target = QuantumState(target.weight, target.matrix, target.tag, Convention.SIGMA, target.group)
        frame = reference.coefficient / state_eval(sigma_target, p, group=g).coefficient
        coefficient = coefficient * frame
    return StateValue(complex(coefficient), reference.half_density)


def eigen_consistency_error(g: GroupData, spec: TransformSpec, st: QuantumState, p: CotangentPoint) -> float:
    """|e^{-t h(lambda+rho)} e^{t h_hat} sigma(p) - sigma^{g+th}(p)| relativo"""
    a = np.asarray(st.weight, dtype=float) + g.rho
    transported = transport_pointwise(g, spec, st, p).coefficient
    rescaled = np.exp(-spec.time * float(spec.potential.value(a))) * transported
    reference = state_eval(transport_state(spec, st), p, group=g).coefficient
    return float(abs(rescaled - reference) / max(abs(reference), 1e-300))


# ---------------------------------------------------------------------------
# Fourier en K y Plancherel
# ---------------------------------------------------------------------------


@dataclass
class PeterWeylSum:
    """F(x) = sum_lambda tr(pi_lambda(x) A_lambda)"""

    group: GroupData
    blocks: Dict[Weight, np.ndarray] = field(default_factory=dict)

    @property
    def bandwidth(self) -> int:
        return max((int(sum(lam)) for lam in self.blocks), default=0)

    def __call__(self, x: np.ndarray) -> complex:
        return complex(
            sum(np.trace(rep_element(irrep(self.group, lam), x) @ a) for lam, a in self.blocks.items())
        )

    def on_rule(self, rule) -> np.ndarray:
        """Valores en los nodos de una cuadratura de Haar"""
        values = np.zeros(len(rule), dtype=complex)
        for lam, a in self.blocks.items():
            values += np.einsum("mij,ji->m", rule.rep(irrep(self.group, lam)), a)
        return values


def peter_weyl_function(g: GroupData, blocks: Dict[Weight, np.ndarray]) -> PeterWeylSum:
    return PeterWeylSum(g, {irrep(g, lam).highest: np.asarray(a, dtype=complex) for lam, a in blocks.items()})


def random_peter_weyl_sum(g: GroupData, max_weight: int, rng: np.random.Generator, blocks: int = 2) -> PeterWeylSum:
    """Suma de Peter-Weyl con bloques gaussianos complejos en pesos aleatorios distintos"""
    chosen = rng.choice(max_weight + 1, size=min(blocks, max_weight + 1), replace=False)
    out = {}
    for k in sorted(int(c) for c in chosen):
        d = k + 1
        out[(k,)] = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return peter_weyl_function(g, out)


def fourier_hat(
    g: GroupData, f: Union[PeterWeylSum, Callable[[np.ndarray], complex]], weight, order: int
) -> np.ndarray:
    """
    F_hat(pi_lambda) = int_K F(x) pi_lambda(x)^* dx por cuadratura de Haar

    Exacta si F tiene ancho de banda b y lambda + b < 2 * order.
    """
    ir = irrep(g, weight)
    rule = haar_quadrature(g, order)
    if isinstance(f, PeterWeylSum):
        values = f.on_rule(rule)
    else:
        values = np.array([f(x) for x in rule.elements], dtype=complex)
    reps = rule.rep(ir)
    return np.einsum("m,mji->ij", rule.weights * values, reps.conj())


def fourier_hat_exact(f: PeterWeylSum, weight) -> np.ndarray:
    """Por ortogonalidad de Schur: F_hat(pi_lambda) = A_lambda / d_lambda"""
    ir = irrep(f.group, weight)
    a = f.blocks.get(ir.highest)
    if a is None:
        return np.zeros((ir.dim, ir.dim), dtype=complex)
    return a / ir.dim


def plancherel_check(f: PeterWeylSum, method: str = "exact", order: Optional[int] = None) -> PlancherelResult:
    """
    ||F||^2 frente a sum_lambda d_lambda tr(F_hat^* F_hat)

    Args:
        method: 'exact' (ortogonalidad) o 'quadrature' (Haar)
        order: Orden de la cuadratura (por defecto ancho de banda + 1)
    """
    g = f.group
    if method == "exact":
        lhs = sum(
            float(np.real(np.trace(a.conj().T @ a))) / irrep(g, lam).dim for lam, a in f.blocks.items()
        )
        hats = {lam: fourier_hat_exact(f, lam) for lam in f.blocks}
    elif method == "quadrature":
        order = order or f.bandwidth + 1
        rule = haar_quadrature(g, order)
        lhs = float(np.sum(rule.weights * np.abs(f.on_rule(rule)) ** 2))
        hats = {lam: fourier_hat(g, f, lam, order) for lam in f.blocks}
    else:
        raise ValueError(f"Método de Plancherel desconocido: {method!r}")
    rhs = sum(renormalized_hs(irrep(g, lam).dim, m, m).real for lam, m in hats.items())
    _logger.debug(f"Plancherel ({method}): lhs = {lhs:.15g}, rhs = {rhs:.15g}")
    return PlancherelResult(lhs=float(lhs), rhs=float(rhs), method=method)


# ---------------------------------------------------------------------------
# Isomorfismo Phi en el extremo de Kirwin-Wu
# ---------------------------------------------------------------------------


def phi_iso(st: KWStateData) -> np.ndarray:
    """Phi(sigma^infty_{lambda, A}) = A"""
    return st.matrix.copy()


def transport_to_kw(g: GroupData, v: IsotypicVector) -> List[KWStateData]:
    """Límite t -> infinito del transporte de cada bloque"""
    return [kw_state(g, lam, a) for lam, a in v.blocks.items()]


def fourier_blocks_via_kw(g: GroupData, f: PeterWeylSum) -> Dict[Weight, np.ndarray]:
    """Phi o transporte aplicado a F, normalizado como F_hat: A_lambda / d_lambda"""
    states = transport_to_kw(g, IsotypicVector(dict(f.blocks)))
    return {st.weight: phi_iso(st) / irrep(g, st.weight).dim for st in states}


def kw_norm_squared(g: GroupData, st: KWStateData) -> float:
    """||sigma^infty_{lambda, A}||^2 = tr(A^* A) / d_lambda"""
    d = irrep(g, st.weight).dim
    return float(np.real(np.trace(st.matrix.conj().T @ st.matrix))) / d


def renormalized_hs(d: int, a: np.ndarray, b: np.ndarray) -> complex:
    """Producto de Hilbert-Schmidt renormalizado d * tr(A^* B)"""
    return complex(d * np.trace(np.asarray(a).conj().T @ np.asarray(b)))
