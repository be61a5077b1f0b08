#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Límite de Kirwin-Wu: funciones F_{lambda, A}, descomposición armónica de
los coeficientes holomorfos, perfiles de convergencia, lema de Laplace,
monodromía de Bohr-Sommerfeld y pares de estados límite.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from core.convex import InvariantPotential, laplace_phase, legendre
from core.errors import DegenerateRatioError, SingularStratumError
from core.kahler import matrix_coeff
from core.lie_core import character_value, torus_element, weyl_density
from core.phase_space import kak_decompose, mu_inv, tinv_act
from core.representations import haar_quadrature, irrep, rep_element, torus_quadrature, weight_projector
from models.group_models import GroupData, Irrep, Weight
from models.phase_models import CotangentPoint, KAKFrame
from models.state_models import (
    ConvergenceProfile,
    HarmonicTable,
    KWStateData,
    LaplaceResult,
    QuantumState,
    TagKind,
)
from utils.logger import get_logger
from utils.quadrature import composite_gauss_legendre, tensor_rule

_logger = get_logger("KWLimit")


def _sandwich(ir: Irrep, frame: KAKFrame, a: np.ndarray) -> np.ndarray:
    """pi(x2)^* A pi(x1): su diagonal da tr(pi(x1) P_nu pi(x2)^* A) por pesos"""
    return rep_element(ir, frame.x2).conj().T @ a @ rep_element(ir, frame.x1)


def conj_projector(ir: Irrep, nu: Weight, frame: KAKFrame) -> np.ndarray:
    """P_nu(x, xi) = pi(x2) P_nu pi(x2)^*: no depende del gauge del toro"""
    u = rep_element(ir, frame.x2)
    return u @ weight_projector(ir, nu) @ u.conj().T


def harmonic_coefficients(g: GroupData, ir: Irrep, a: np.ndarray, p: CotangentPoint) -> Dict[Weight, complex]:
    """c_nu = tr(pi(x1) P_nu pi(x2^{-1}) A) para cada peso distinto nu"""
    frame = kak_decompose(g, p)
    diag = np.diagonal(_sandwich(ir, frame, a))
    return {nu: complex(np.sum(diag * ir.projector_diag(nu))) for nu in ir.distinct_weights()}


def big_f(g: GroupData, ir: Irrep, a: np.ndarray, p: CotangentPoint) -> complex:
    """
    F_{lambda, A}(x, xi) = tr(pi(x1) P_lambda pi(x2^{-1}) A)

    Independiente del gauge de la descomposición KAK.
    """
    return harmonic_coefficients(g, ir, a, p)[ir.highest]


def big_f_product(g: GroupData, ir: Irrep, u: np.ndarray, v: np.ndarray, p: CotangentPoint) -> complex:
    """F para A = u v^*: producto (v^* pi(x1) e_0)(e_0^* pi(x2)^* u)"""
    frame = kak_decompose(g, p)
    left = v.conj() @ rep_element(ir, frame.x1)[:, 0]
    right = rep_element(ir, frame.x2).conj().T[0, :] @ u
    return complex(left * right)


def harmonics(g_pot: InvariantPotential, ir: Irrep, a: np.ndarray, p: CotangentPoint) -> HarmonicTable:
    """
    (f_hat)_nu = e^{<nu, L_g(xi_plus)>} tr(pi(x1) P_nu pi(x2^{-1}) A)

    La suma sobre nu reconstruye f^g_{lambda, A}(p).
    """
    g = g_pot.group
    s = kak_decompose(g, p).xi_plus.coords
    lvec = legendre(g_pot, s)
    coeffs = harmonic_coefficients(g, ir, a, p)
    entries = {
        nu: complex(np.exp(g.pair(np.asarray(nu, dtype=float), lvec)) * c) for nu, c in coeffs.items()
    }
    return HarmonicTable(highest=ir.highest, entries=entries)


def harmonics_by_quadrature(
    g_pot: InvariantPotential, ir: Irrep, a: np.ndarray, p: CotangentPoint, nodes: int = 128
) -> Dict[Weight, complex]:
    """
    (f_hat)_nu = int_T chi_nu(t) f(p * t) dt con una malla periódica del toro

    Exacta cuando las frecuencias nu - mu caben en la malla.
    """
    g = g_pot.group
    ys, weights = torus_quadrature(g, nodes)
    tori = [torus_element(g, y) for y in ys]
    values = np.array([matrix_coeff(g_pot, ir, a, tinv_act(g, p, t)) for t in tori])
    return {
        nu: complex(np.sum(weights * values * np.array([character_value(g, nu, t) for t in tori])))
        for nu in ir.distinct_weights()
    }


def harmonic_by_quadrature(
    g_pot: InvariantPotential, ir: Irrep, a: np.ndarray, p: CotangentPoint, nu: Weight, nodes: int = 128
) -> complex:
    return harmonics_by_quadrature(g_pot, ir, a, p, nodes)[tuple(nu)]


def spectral_gaps(g: GroupData, h: InvariantPotential, ir: Irrep, s) -> Dict[Weight, float]:
    """<lambda - nu, L_h(xi_plus)> para cada peso nu != lambda de V_lambda"""
    lam = np.asarray(ir.highest, dtype=float)
    lvec = legendre(h, s)
    return {
        tuple(nu): float(g.pair(lam - np.asarray(nu, dtype=float), lvec))
        for nu in dict.fromkeys(tuple(w) for w in ir.weights)
        if tuple(nu) != tuple(ir.highest)
    }


def predicted_rate(
    g: GroupData, h: InvariantPotential, ir: Irrep, coeffs: Dict[Weight, complex], s
) -> float:
    """Menor salto espectral entre los pesos con coeficiente no nulo"""
    scale = max(abs(c) for c in coeffs.values()) or 1.0
    active = {tuple(nu) for nu, c in coeffs.items() if abs(c) > 1e-12 * scale}
    gaps = [gap for nu, gap in spectral_gaps(g, h, ir, s).items() if nu in active]
    return min(gaps) if gaps else float("inf")


def _fit_log_linear(ts: np.ndarray, errors: np.ndarray) -> Tuple[float, float]:
    half = ts >= ts[len(ts) // 2]
    mask = half & (errors > 0) & np.isfinite(errors)
    if np.count_nonzero(mask) < 2:
        return float("nan"), float("nan")
    x, y = ts[mask], np.log(errors[mask])
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = np.sum((y - np.mean(y)) ** 2)
    r_squared = 1.0 - np.sum(residual**2) / total if total > 0 else 1.0
    return float(-slope), float(r_squared)


def convergence_profile(
    g_pot: InvariantPotential,
    h: InvariantPotential,
    ir: Irrep,
    a: np.ndarray,
    p: CotangentPoint,
    t_grid: Sequence[float],
) -> ConvergenceProfile:
    """
    Perfil de e^{-<lambda, L_t>} f^{g + t h}(p) frente a F(p)

    La columna de error es la cola de armónicos subdominantes, igual a
    |reescalado - F| sin cancelación.
    """
    g = g_pot.group
    s = kak_decompose(g, p).xi_plus.coords
    lam = np.asarray(ir.highest, dtype=float)
    coeffs = harmonic_coefficients(g, ir, a, p)
    rows = []
    for t in t_grid:
        g_t = g_pot + h.scaled(t)
        lvec = legendre(g_t, s)
        rescaled = np.exp(-g.pair(lam, lvec)) * matrix_coeff(g_t, ir, a, p)
        tail = sum(
            np.exp(g.pair(np.asarray(nu, dtype=float) - lam, lvec)) * c
            for nu, c in coeffs.items()
            if tuple(nu) != tuple(ir.highest)
        )
        rows.append((float(t), complex(rescaled), float(abs(tail))))

    ts = np.array([r[0] for r in rows])
    errors = np.array([r[2] for r in rows])
    rate, r_squared = _fit_log_linear(ts, errors)
    predicted = predicted_rate(g, h, ir, coeffs, s)
    _logger.debug(f"Perfil de convergencia: ajuste {rate:.6g}, predicción {predicted:.6g}")
    return ConvergenceProfile(rows=rows, fitted_rate=rate, r_squared=r_squared, predicted_rate=predicted)


def log_asymptotic(
    g_pot: InvariantPotential, h: InvariantPotential, ir: Irrep, a: np.ndarray, p: CotangentPoint, t: float
) -> float:
    """(1/t) log|f^{g + t h}(p)| vía la descomposición armónica (sin desbordamiento)"""
    g = g_pot.group
    s = kak_decompose(g, p).xi_plus.coords
    lam = np.asarray(ir.highest, dtype=float)
    lvec = legendre(g_pot, s) + t * legendre(h, s)
    coeffs = harmonic_coefficients(g, ir, a, p)
    total = sum(np.exp(g.pair(np.asarray(nu, dtype=float) - lam, lvec)) * c for nu, c in coeffs.items())
    return float((g.pair(lam, lvec) + np.log(abs(total))) / t)


def ratio_function(g: GroupData, ir: Irrep, a1: np.ndarray, a2: np.ndarray, p: CotangentPoint) -> complex:
    """
    F_{lambda, A1} / F_{lambda, A2}: invariante bajo T en el estrato regular

    Raises:
        DegenerateRatioError: Si el denominador se anula
    """
    denom = big_f(g, ir, a2, p)
    if abs(denom) < 1e-12 * max(1.0, float(np.linalg.norm(a2))):
        raise DegenerateRatioError("F_{lambda, A2} se anula en el punto")
    return big_f(g, ir, a1, p) / denom


# ---------------------------------------------------------------------------
# Lema de Laplace
# ---------------------------------------------------------------------------


def laplace_test(
    h: InvariantPotential,
    weight,
    t: float,
    phi: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    nodes: int = 40,
    panels: int = 8,
) -> LaplaceResult:
    """
    int sqrt(det(t Hess h(a) / 2 pi)) e^{-t psi_h^lambda} P^2 phi ds -> P(a)^2 phi(a)

    Hessiano y medida ds en la normalización de covolumen 1.
    """
    g = h.group
    a = np.asarray(weight, dtype=float) + g.rho
    hess = h.covolume_hessian(a)
    sigma = 1.0 / np.sqrt(t * np.min(np.linalg.eigvalsh(h.euclidean_hessian(a))))
    rules = [
        composite_gauss_legendre(max(0.0, ai - 40 * sigma), ai + 40 * sigma, nodes, panels) for ai in a
    ]
    points, weights = tensor_rule(rules)
    phi = phi or (lambda pts: np.ones(len(pts)))
    norm = np.sqrt(np.linalg.det(t * hess / (2 * np.pi)))
    integrand = norm * np.exp(-t * laplace_phase(h, weight, points)) * weyl_density(g, points) ** 2
    value = float(np.sum(weights * integrand * np.asarray(phi(points))))
    limit = float(weyl_density(g, a) ** 2 * np.asarray(phi(a[None, :]))[0])
    return LaplaceResult(t=float(t), value=value, limit=limit)


# ---------------------------------------------------------------------------
# Bohr-Sommerfeld
# ---------------------------------------------------------------------------


def bs_monodromy(g: GroupData, eta, p: CotangentPoint) -> complex:
    """
    Holonomía de la conexión de prequantización con corrección de semiforma
    a lo largo de la órbita del cocaracter eta por la fibra de p

    Vale exactamente 1 si y solo si mu_inv(p) - rho es un peso entero.

    Raises:
        SingularStratumError: Si p no está en el estrato regular
    """
    point = mu_inv(g, p)
    if not point.regular:
        raise SingularStratumError("bs_monodromy requiere un punto regular")
    phase = np.mod(float(np.dot(np.asarray(eta, dtype=float), point.coords - g.rho)), 1.0)
    if phase == 0.0:
        return 1.0 + 0.0j
    return complex(np.exp(2j * np.pi * phase))


def bs_scan(g: GroupData, upper: float = 5.0, step: float = 0.01) -> list:
    """
    Barrido de la monodromía sobre la cámara (rango 1)

    Returns:
        Lista de (s, monodromía) en s = k * step, 0 < s <= upper
    """
    if g.rank != 1:
        raise ValueError("bs_scan está definido para rango 1")
    inverse = 1.0 / step
    exact = abs(inverse - round(inverse)) < 1e-9
    count = int(round(upper / step))
    rows = []
    for k in range(1, count + 1):
        s = k / round(inverse) if exact else k * step
        p = CotangentPoint(np.eye(g.n), np.diag(g.weight_to_diag([s])))
        rows.append((s, bs_monodromy(g, (1,), p)))
    return rows


# ---------------------------------------------------------------------------
# Estados de Kirwin-Wu y factorización
# ---------------------------------------------------------------------------


def kw_state(g: GroupData, weight, a: np.ndarray) -> KWStateData:
    """sigma^infty_{lambda, A} = (2 pi)^{r/2} P(a)^2 F_{lambda, A} delta_{mu_inv = a}"""
    ir = irrep(g, weight)
    support = np.asarray(ir.highest, dtype=float) + g.rho
    normalization = float((2 * np.pi) ** (g.rank / 2.0) * weyl_density(g, support) ** 2)
    return KWStateData(ir.highest, np.asarray(a, dtype=complex), support, normalization)


def kw_state_eval(g: GroupData, st: KWStateData, k1: np.ndarray, k2: np.ndarray) -> complex:
    """Valor en (k1, k2) sobre la fibra: normalización * tr(pi(k1) P_lambda pi(k2)^{-1} A)"""
    ir = irrep(g, st.weight)
    proj = np.diag(ir.projector_diag(ir.highest))
    value = np.trace(rep_element(ir, k1) @ proj @ rep_element(ir, k2).conj().T @ st.matrix)
    return complex(st.normalization * value)


def factorize_state(g: GroupData, st: QuantumState, p: CotangentPoint) -> Tuple[complex, float, float]:
    """
    Factores (F1, F2, F3) del coeficiente s^{g + t h}:

        F1 = f e^{-<lambda, L_t>}
        F2 = sqrt(det(t Hess h(a) / 2 pi)) e^{-t psi_h}
        F3 = e^{-psi_g} (2 pi)^{r/2} sqrt((1 + det Hess g_t) / det(t Hess h(a)))

    Hessianos en el marco métrico; F3(a) tiende a (2 pi)^{r/2}.
    """
    tag = st.tag
    if tag.kind is not TagKind.KAHLER or tag.ray is None or tag.time <= 0:
        raise ValueError("factorize_state requiere un estado de Kähler con t > 0")
    base, h, t = tag.base, tag.ray, tag.time
    g_t = tag.potential()
    ir = irrep(g, st.weight)
    s = mu_inv(g, p).coords
    a = np.asarray(ir.highest, dtype=float) + g.rho
    lvec = legendre(g_t, s)

    f1 = matrix_coeff(g_t, ir, st.matrix, p) * np.exp(-g.pair(np.asarray(ir.highest, dtype=float), lvec))
    det_h = float(np.linalg.det(t * h.hessian(a)))
    f2 = np.sqrt(det_h / (2 * np.pi) ** g.rank) * np.exp(-t * laplace_phase(h, ir.highest, s))
    f3 = (
        np.exp(-laplace_phase(base, ir.highest, s))
        * (2 * np.pi) ** (g.rank / 2.0)
        * np.sqrt((1.0 + np.linalg.det(g_t.hessian(s))) / det_h)
    )
    return complex(f1), float(f2), float(f3)


# ---------------------------------------------------------------------------
# Pares con funciones de prueba
# ---------------------------------------------------------------------------


@dataclass
class GaussianMatrixTest:
    """
    Función de prueba psi = exp(-|mu_inv - c|^2 / w^2) * conj(F_{lambda', B})
    """

    center: np.ndarray
    width: float
    weight: Weight
    matrix: np.ndarray

    def radial(self, g: GroupData, s) -> np.ndarray:
        diff = np.asarray(s, dtype=float) - np.asarray(self.center, dtype=float)
        return np.exp(-g.norm2(diff) / self.width**2)

    def value(self, g: GroupData, p: CotangentPoint) -> complex:
        ir = irrep(g, self.weight)
        s = mu_inv(g, p).coords
        return complex(self.radial(g, s) * np.conj(big_f(g, ir, self.matrix, p)))


def fiber_moments(
    g: GroupData, ir: Irrep, a: np.ndarray, test: GaussianMatrixTest, haar_order: Optional[int] = None
) -> Dict[Weight, complex]:
    """
    M_nu = int int tr(pi(k1) P_nu pi(k2)^* A) conj(F_{lambda', B}(k1, k2)) dk1 dk2

    Sin orden: valor exacto por Schur, delta_{nu lambda} delta_{lambda lambda'} tr(A B^*)/d^2.
    """
    if haar_order is None:
        moments = {nu: 0.0 + 0.0j for nu in ir.distinct_weights()}
        if tuple(test.weight) == tuple(ir.highest):
            moments[ir.highest] = complex(np.trace(a @ test.matrix.conj().T)) / ir.dim**2
        return moments

    rule = haar_quadrature(g, haar_order)
    reps = rule.rep(ir)
    w = rule.weights
    # T[m, k, i] = (pi(k2_k)^* A pi(k1_m))_ii
    mine = np.einsum("kji,mji->mki", reps.conj(), np.einsum("jl,mli->mji", a, reps))
    ir_b = irrep(g, test.weight)
    reps_b = rule.rep(ir_b)
    top = ir_b.projector_diag(ir_b.highest)
    theirs = np.einsum(
        "kji,mji,i->mk", reps_b.conj(), np.einsum("jl,mli->mji", test.matrix, reps_b), top
    )
    weighted = (w[:, None] * w[None, :]) * np.conj(theirs)
    moments = {}
    for nu in ir.distinct_weights():
        c_nu = np.einsum("mki,i->mk", mine, ir.projector_diag(nu))
        moments[nu] = complex(np.sum(weighted * c_nu))
    return moments


def kw_pairing(
    g: GroupData, st: KWStateData, test: GaussianMatrixTest, haar_order: Optional[int] = None
) -> complex:
    """<sigma^infty, psi> = (2 pi)^{r/2} P(a)^2 G(a) M_lambda"""
    ir = irrep(g, st.weight)
    moments = fiber_moments(g, ir, st.matrix, test, haar_order)
    return complex(st.normalization * test.radial(g, st.support) * moments[ir.highest])


def kahler_pairing(
    g: GroupData,
    st: QuantumState,
    test: GaussianMatrixTest,
    haar_order: Optional[int] = None,
    nodes: int = 32,
    panels: int = 16,
) -> complex:
    """
    <s^{g_t}, psi> respecto de la medida de Liouville reducida

    sum_nu M_nu int P^2 G e^{<nu - lambda, L_t>} e^{-psi_{g_t}} (1 + det)^{1/2} sqrt(det B) ds
    """
    if st.tag.kind is not TagKind.KAHLER:
        raise ValueError("kahler_pairing requiere un estado de Kähler")
    g_t = st.tag.potential()
    ir = irrep(g, st.weight)
    lam = np.asarray(ir.highest, dtype=float)
    a = lam + g.rho
    moments = fiber_moments(g, ir, st.matrix, test, haar_order)

    upper = float(max(np.max(a), np.max(test.center)) + 6.0 * test.width + 8.0)
    rule = composite_gauss_legendre(0.0, upper, nodes, panels)
    points, weights = tensor_rule([rule] * g.rank)
    lvec = g_t.gradient(points)
    psi = laplace_phase(g_t, ir.highest, points)
    dets = np.linalg.det(g_t.hessian(points))
    base = (
        weyl_density(g, points) ** 2
        * test.radial(g, points)
        * np.exp(-psi)
        * np.sqrt(1.0 + dets)
        * np.sqrt(np.linalg.det(g.form))
    )
    total = 0.0 + 0.0j
    for nu, m in moments.items():
        if m == 0:
            continue
        shift = (np.asarray(nu, dtype=float) - lam) @ g.form @ lvec.T
        total += m * np.sum(weights * base * np.exp(shift))
    return complex(total)
