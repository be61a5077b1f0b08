#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Estructuras de Kähler K x K-invariantes en T*K asociadas a un potencial
convexo g: potencial de Kähler, coeficientes matriciales holomorfos,
marcos de formas (n, 0), semiformas, estados y sus normas.
"""

from functools import lru_cache
from itertools import combinations
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.special import logsumexp

from core.convex import (
    InvariantPotential,
    full_hessian_matrix,
    legendre,
    legendre_full,
    quadratic_potential,
)
from core.errors import QuadratureError
from core.lie_core import (
    ad_matrix,
    cartan_element,
    group_data,
    regular_or_raise,
    weyl_density,
)
from core.phase_space import mu_inv, weyl_constant
from core.representations import haar_quadrature, irrep, rep_complexified, rep_element
from models.group_models import GroupData, Irrep
from models.phase_models import CotangentPoint
from models.state_models import (
    Convention,
    NormResult,
    QuantumState,
    StateTag,
    StateValue,
    TagKind,
    TopFormValue,
)
from utils.constants import DEFAULT_TOLERANCES
from utils.logger import get_logger
from utils.quadrature import composite_gauss_legendre, tensor_rule

_logger = get_logger("Kahler")


def kahler_potential(g_pot: InvariantPotential, p: CotangentPoint) -> float:
    """kappa_g(x, xi) = <xi, L_g(xi)> - g(xi), calculado en la cámara"""
    g = g_pot.group
    s = mu_inv(g, p).coords
    return float(g.pair(s, legendre(g_pot, s)) - g_pot.value(s))


def matrix_coeff(g_pot: InvariantPotential, ir: Irrep, a: np.ndarray, p: CotangentPoint) -> complex:
    """
    f^g_{lambda, A}(x, xi) = tr(π_lambda(x e^{i L_g(xi)}) A)

    Raises:
        SingularStratumError: Si xi no es regular
    """
    y = legendre_full(g_pot, p.xi)
    return complex(np.trace(rep_complexified(ir, p.x, y) @ a))


# ---------------------------------------------------------------------------
# Marcos de formas (n, 0)
# ---------------------------------------------------------------------------


def _frame_matrices(g_pot: InvariantPotential, xi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """E = e^{-i ad_Y} y F = ((1 - e^{-i ad_Y}) / ad_Y) Hess, con Y = L_g(xi)"""
    g = g_pot.group
    y = legendre_full(g_pot, xi)
    mu, u = np.linalg.eigh(1j * ad_matrix(g, y))
    safe = np.where(np.abs(mu) < 1e-12, 1.0, mu)
    fvals = np.where(np.abs(mu) < 1e-12, 1j, -1j * np.expm1(-mu) / safe)
    e = (u * np.exp(-mu)) @ u.conj().T
    f = (u * fvals) @ u.conj().T @ full_hessian_matrix(g_pot, xi)
    return e, f


def _pair_density(rows: np.ndarray) -> float:
    """|det [[E, F], [conj E, conj F]]|^{1/2} para filas [E | F]"""
    stacked = np.vstack([rows, rows.conj()])
    return float(np.sqrt(abs(np.linalg.det(stacked))))


def omega_density(g_pot: InvariantPotential, xi_plus) -> float:
    """
    Forma cerrada de |<Omega_g, Omega_g>|^{1/2} (sin calibrar)

    2^{r/2 + |Phi+|} sqrt(det Hess_t g) prod_alpha sinh<alpha, L_g> / <alpha, xi>
    """
    g = g_pot.group
    s = np.asarray(xi_plus, dtype=float)
    regular_or_raise(g, s, "omega_density")
    lvec = legendre(g_pot, s)
    roots_l = g.root_pairings(lvec)
    roots_s = g.root_pairings(s)
    factor = 2.0 ** (g.rank / 2.0 + len(g.positive_roots))
    return float(
        factor
        * np.sqrt(np.linalg.det(g_pot.hessian(s)))
        * np.prod(np.sinh(roots_l) / roots_s)
    )


def frame_form(g_pot: InvariantPotential, p: CotangentPoint) -> TopFormValue:
    """
    Omega_g = wedge_j Omega^j con Omega = e^{-i ad_Y} omega + f(ad_Y) Hess dxi

    Raises:
        SingularStratumError: Si xi no es regular
    """
    e, f = _frame_matrices(g_pot, p.xi)
    rows = np.hstack([e, f])
    calibration = half_form_calibration(g_pot.group)
    return TopFormValue(
        rows=rows,
        prefactor=1.0,
        coefficient=complex(np.linalg.det(e)),
        half_density=calibration * _pair_density(rows),
    )


def omega_hat_prefactor(g_pot: InvariantPotential, xi_plus) -> float:
    """e^{-2<rho, L_g>} / (1 + det Hess_t g) en el marco métrico"""
    g = g_pot.group
    s = np.asarray(xi_plus, dtype=float)
    lvec = legendre(g_pot, s)
    return float(
        np.exp(-2.0 * g.pair(g.rho, lvec)) / (1.0 + np.linalg.det(g_pot.hessian(s)))
    )


def omega_hat(g_pot: InvariantPotential, p: CotangentPoint) -> TopFormValue:
    """Forma renormalizada Omega_hat_g = prefactor * Omega_g"""
    s = mu_inv(g_pot.group, p).coords
    frame = frame_form(g_pot, p)
    prefactor = omega_hat_prefactor(g_pot, s)
    return TopFormValue(
        rows=frame.rows,
        prefactor=prefactor,
        coefficient=prefactor * frame.coefficient,
        half_density=prefactor * frame.half_density,
    )


def half_density(g_pot: InvariantPotential, p: CotangentPoint) -> float:
    """|<Omega_hat_g, Omega_hat_g>|^{1/2} calibrada, por la forma cerrada"""
    g = g_pot.group
    s = mu_inv(g, p).coords
    return float(
        half_form_calibration(g) * omega_hat_prefactor(g_pot, s) * omega_density(g_pot, s)
    )


def plucker(rows: np.ndarray, scalar: complex = 1.0) -> np.ndarray:
    """Coordenadas de Plücker (menores n x n) de scalar * wedge de las filas"""
    n, m = rows.shape
    return np.array(
        [scalar * np.linalg.det(rows[:, list(cols)]) for cols in combinations(range(m), n)]
    )


def omega_tilde_infinity(g: GroupData, xi_plus) -> TopFormValue:
    """
    Forma límite Omega_tilde_infty en el cobase propio de ad_{xi_plus}

    Filas: dzeta en el toro; c theta + i dzeta en autovalores negativos y
    (i / c) dzeta en positivos, con c = <alpha, xi_plus>. El prefactor es
    det(U) para expresar la cuña en el cobase real.
    """
    s = np.asarray(xi_plus, dtype=float)
    regular_or_raise(g, s, "omega_tilde_infinity")
    mu, u = np.linalg.eigh(1j * ad_matrix(g, cartan_element(g, s)))
    dim = g.dim
    eig_rows = np.zeros((dim, 2 * dim), dtype=complex)
    for k, value in enumerate(mu):
        c = abs(value)
        if c < 1e-9:
            eig_rows[k, dim + k] = 1.0
        elif value < 0:
            eig_rows[k, k] = c
            eig_rows[k, dim + k] = 1j
        else:
            eig_rows[k, dim + k] = 1j / c
    uinv = u.conj().T
    rows = np.hstack([eig_rows[:, :dim] @ uinv, eig_rows[:, dim:] @ uinv])
    return TopFormValue(rows=rows, prefactor=complex(np.linalg.det(u)), coefficient=0.0)


def omega_limit_error(g_pot: InvariantPotential, xi_plus) -> float:
    """Error relativo entre Plücker(Omega_hat) y Plücker(i^r P^{-1} Omega_tilde_infty)"""
    g = g_pot.group
    s = np.asarray(xi_plus, dtype=float)
    p = CotangentPoint(np.eye(g.n), np.diag(g.weight_to_diag(s)))
    hat = omega_hat(g_pot, p)
    limit = omega_tilde_infinity(g, s)
    target = plucker(limit.rows, (1j ** g.rank) * limit.prefactor / weyl_density(g, s))
    actual = plucker(hat.rows, hat.prefactor)
    return float(np.linalg.norm(actual - target) / np.linalg.norm(target))


def antiholomorphic_directions(g_pot: InvariantPotential, p: CotangentPoint) -> np.ndarray:
    """
    Base del núcleo de las filas [E | F]: vectores de tipo (0, 1)

    Returns:
        Matriz (2 dim, dim) cuyas columnas son coordenadas (xdot, xidot)
    """
    e, f = _frame_matrices(g_pot, p.xi)
    return null_space(np.hstack([e, f]))


# ---------------------------------------------------------------------------
# Estados
# ---------------------------------------------------------------------------


def _schrodinger_value(ir: Irrep, a: np.ndarray, p: CotangentPoint) -> StateValue:
    return StateValue(complex(np.trace(rep_element(ir, p.x) @ a)), 1.0)


def state_eval(st: QuantumState, p: CotangentPoint, group: Optional[GroupData] = None) -> StateValue:
    """
    Coeficiente del estado y densidad de su semiforma en p

    Convención S: e^{-g(a)} f e^{-kappa} e^{<rho, L>} (1 + det)^{1/2} contra Omega_hat^{1/2}.
    Convención SIGMA: e^{-g(a)} f e^{-kappa} contra Omega^{1/2}.
    Con a = lambda + rho. Ambas dan el mismo |coef|^2 * densidad.
    """
    g = group or _state_group(st)
    ir = irrep(g, st.weight)
    if st.tag.kind is TagKind.KIRWIN_WU:
        raise ValueError("Los estados de Kirwin-Wu son distribuciones: usar kw_state_eval")
    g_pot = st.tag.potential()
    if st.tag.kind is TagKind.SCHRODINGER or g_pot is None or g_pot.is_zero:
        return _schrodinger_value(ir, st.matrix, p)

    s = mu_inv(g, p).coords
    regular_or_raise(g, s, "state_eval")
    a = np.asarray(st.weight, dtype=float) + g.rho
    lvec = legendre(g_pot, s)
    kappa = g.pair(s, lvec) - g_pot.value(s)
    f = matrix_coeff(g_pot, ir, st.matrix, p)
    coefficient = np.exp(-g_pot.value(a) - kappa) * f
    density = half_form_calibration(g) * omega_density(g_pot, s)

    if st.convention is Convention.SIGMA:
        return StateValue(complex(coefficient), float(density))

    det = np.linalg.det(g_pot.hessian(s))
    rho_l = g.pair(g.rho, lvec)
    coefficient = coefficient * np.exp(rho_l) * np.sqrt(1.0 + det)
    density = density * np.exp(-2.0 * rho_l) / (1.0 + det)
    return StateValue(complex(coefficient), float(density))


def _state_group(st: QuantumState) -> GroupData:
    return group_data(st.group)


def _log_fiber_density(
    g: GroupData, ir: Irrep, g_pot: InvariantPotential, points: np.ndarray
) -> np.ndarray:
    """
    log de la densidad promediada en K x K sin la constante tr(A*A)/d^2

    -2 g(a) - 2 kappa + log sum_nu e^{2<nu, L>} + sum_alpha log sinh<alpha, L>
    + log sqrt(det Hess_t) + log(2^{r/2+|Phi+|}) - log P
    """
    a = np.asarray(ir.highest, dtype=float) + g.rho
    lvec = g_pot.gradient(points)
    kappa = np.einsum("mi,ij,mj->m", points, g.form, lvec) - g_pot.value(points)
    weights = ir.weight_array
    nu_l = lvec @ g.form @ weights.T
    roots_l = g.root_pairings(lvec)
    with np.errstate(divide="ignore"):
        log_sinh = roots_l + np.log1p(-np.exp(-2.0 * roots_l)) - np.log(2.0)
        log_p = np.log(weyl_density(g, points))
    dets = np.linalg.det(g_pot.hessian(points))
    return (
        -2.0 * g_pot.value(a)
        - 2.0 * kappa
        + logsumexp(2.0 * nu_l, axis=-1)
        + np.sum(log_sinh, axis=-1)
        + 0.5 * np.log(dets)
        + (g.rank / 2.0 + len(g.positive_roots)) * np.log(2.0)
        - log_p
    )


def _radial_norm(
    g: GroupData,
    ir: Irrep,
    a_matrix: np.ndarray,
    g_pot: InvariantPotential,
    calibration: float,
    nodes: int = 200,
    tol: float = DEFAULT_TOLERANCES["radial_tail"],
) -> NormResult:
    """
    ||sigma||^2 = C c_K tr(A*A)/d^2 int P(s)^2 (densidad de fibra) ds

    El dominio [0, U]^r se amplía hasta que el integrando en U es despreciable.
    """
    a = np.asarray(ir.highest, dtype=float) + g.rho
    upper = 2.0 * (1.0 + float(np.max(a)))
    peak = -np.inf
    for _ in range(60):
        grid = np.linspace(upper / 64, upper, 64)[:, None] * np.ones(g.rank)
        logs = 2.0 * np.log(weyl_density(g, grid)) + _log_fiber_density(g, ir, g_pot, grid)
        peak = max(peak, float(np.max(logs)))
        if logs[-1] < peak - 80.0:
            break
        upper *= 1.5
    else:
        raise QuadratureError("No se encontró un truncamiento radial adecuado")

    panels = 8
    rule = composite_gauss_legendre(0.0, upper, max(4, nodes // panels), panels)
    points, weights = tensor_rule([rule] * g.rank)
    logs = 2.0 * np.log(weyl_density(g, points)) + _log_fiber_density(g, ir, g_pot, points)
    integral = float(np.sum(weights * np.exp(logs)))
    scale = calibration * weyl_constant(g) * float(np.real(np.trace(a_matrix.conj().T @ a_matrix))) / ir.dim**2
    value = scale * integral

    edge = np.full((1, g.rank), upper)
    tail = scale * float(np.exp(2.0 * np.log(weyl_density(g, edge)) + _log_fiber_density(g, ir, g_pot, edge))[0]) * upper
    if value > 0 and tail > tol * value:
        raise QuadratureError(f"Cola radial {tail:.3e} por encima de la tolerancia")
    _logger.debug(f"Norma radial: U = {upper:.3f}, valor = {value:.15g}, cola = {tail:.2e}")
    return NormResult(value=value, tail_estimate=tail, nodes=len(weights))


@lru_cache(maxsize=8)
def _half_form_calibration(name: str) -> float:
    g = group_data(name)
    ir = irrep(g, (1,) + (0,) * (g.rank - 1))
    e11 = np.zeros((ir.dim, ir.dim), dtype=complex)
    e11[0, 0] = 1.0
    raw = _radial_norm(g, ir, e11, quadratic_potential(g), calibration=1.0)
    constant = 0.5 / raw.value
    _logger.info(f"Constante de calibración de semiformas para {name}: {constant:.15g}")
    return constant


def half_form_calibration(g: GroupData) -> float:
    """
    Constante C de las semiformas

    Fijada una vez por ||sigma_{(1), E11}||^2 = 1/2 con h cuadrática y t = 1.
    """
    return _half_form_calibration(g.name)


def norm_density(st: QuantumState, xi_plus, group: Optional[GroupData] = None) -> float:
    """Promedio en K x K de |coef|^2 * densidad sobre la fibra de xi_plus"""
    g = group or _state_group(st)
    ir = irrep(g, st.weight)
    g_pot = st.tag.potential()
    points = np.atleast_2d(np.asarray(xi_plus, dtype=float))
    trace = float(np.real(np.trace(st.matrix.conj().T @ st.matrix)))
    log_density = _log_fiber_density(g, ir, g_pot, points)[0]
    return float(half_form_calibration(g) * trace / ir.dim**2 * np.exp(log_density))


def state_norm(
    st: QuantumState,
    nodes: int = 200,
    group: Optional[GroupData] = None,
) -> NormResult:
    """
    ||sigma||^2 respecto de la medida de Liouville

    Schrödinger: cuadratura de Haar exacta, tr(A*A)/d.
    Kähler: integral radial por ortogonalidad de Schur.
    """
    g = group or _state_group(st)
    ir = irrep(g, st.weight)
    g_pot = st.tag.potential()
    if st.tag.kind is TagKind.SCHRODINGER or g_pot is None or g_pot.is_zero:
        rule = haar_quadrature(g, ir.highest[0] + 1)
        reps = rule.rep(ir)
        values = np.abs(np.einsum("mij,ji->m", reps, st.matrix)) ** 2
        return NormResult(value=float(np.sum(rule.weights * values)), nodes=len(rule))
    if st.tag.kind is TagKind.KIRWIN_WU:
        raise ValueError("La norma de un estado de Kirwin-Wu se obtiene con kw_norm_squared")
    return _radial_norm(g, ir, st.matrix, g_pot, half_form_calibration(g), nodes)


def kahler_state(
    g: GroupData,
    weight,
    matrix: np.ndarray,
    base: InvariantPotential,
    ray: Optional[InvariantPotential] = None,
    time: float = 0.0,
    convention: Convention = Convention.S,
) -> QuantumState:
    """Construye sigma^{g_t}_{lambda, A} con g_t = base + time * ray"""
    ir = irrep(g, weight)
    return QuantumState(
        weight=ir.highest,
        matrix=np.asarray(matrix, dtype=complex),
        tag=StateTag(TagKind.KAHLER, base=base, ray=ray, time=float(time)),
        convention=convention,
        group=g.name,
    )


def schrodinger_state(g: GroupData, weight, matrix: np.ndarray) -> QuantumState:
    ir = irrep(g, weight)
    return QuantumState(
        ir.highest, np.asarray(matrix, dtype=complex), StateTag(TagKind.SCHRODINGER), group=g.name
    )
