#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Coordinador de los comandos del laboratorio: construye estados y puntos
a partir de la configuración, reparte las celdas independientes en el pool
de hilos, evalúa las verificaciones y escribe los artefactos.
"""

from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.convex import potential_from_spec
from core.dependency_checker import DependencyChecker
from core.errors import ConfigError, ToleranceFailure, UnsupportedFeatureError
from core.kahler import half_form_calibration, kahler_state, matrix_coeff, schrodinger_state, state_norm
from core.kw_limit import (
    GaussianMatrixTest,
    bs_scan,
    convergence_profile,
    harmonics,
    harmonics_by_quadrature,
    kahler_pairing,
    kw_pairing,
    kw_state,
    laplace_test,
)
from core.lie_core import bs_points, enumerate_weights, group_data, random_group_element, weyl_dimension
from core.phase_space import chamber_point_matrix
from core.representations import irrep
from core.transforms import (
    eigen_consistency_error,
    fourier_blocks_via_kw,
    fourier_hat,
    gcst,
    kw_norm_squared,
    peter_weyl_function,
    plancherel_check,
    random_peter_weyl_sum,
    transport_state,
    transport_to_kw,
)
from models.config_models import MatrixMode, RunConfig
from models.group_models import GroupData, Irrep, weight_label
from models.phase_models import CotangentPoint
from models.state_models import IsotypicVector, StateTag, TagKind, TransformSpec
from services.system_monitor import SystemMonitor
from utils.constants import (
    APP_VERSION,
    CONVENTION_IDS,
    OPTIONAL_GROUPS,
    PAIRING_CHECK_TIME,
    PLANCHEREL_RANDOM_CASES,
    SUPPORTED_GROUPS,
)
from utils.file_utils import FileUtils
from utils.logger import get_logger, log_execution_time
from workers.thread_manager import ThreadManager

_logger = get_logger("LabApplication")


@dataclass
class Check:
    """Verificación numérica de un comando"""

    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "value": float(self.value),
            "threshold": float(self.threshold),
            "passed": bool(self.passed),
            "detail": self.detail,
        }


@dataclass
class CommandResult:
    """Filas, verificaciones y datos JSON producidos por un comando"""

    command: str
    columns: List[str] = field(default_factory=list)
    rows: List[Sequence[Any]] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)
    data: Optional[Dict[str, Any]] = None
    artifact: Optional[Path] = None
    lines: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add_max_check(self, name: str, values: Sequence[float], threshold: float, detail: str = ""):
        """Pasa si max(values) < threshold (sin valores: pasa con 0)"""
        value = float(max(values)) if len(values) else 0.0
        self.checks.append(Check(name, value, threshold, bool(value < threshold), detail))


class LabApplication:
    """Clase principal que ejecuta los comandos del laboratorio"""

    def __init__(self, config: RunConfig):
        self.logger = get_logger("LabApplication")
        self.config = config
        self.monitor = SystemMonitor()
        threads = config.general.threads or SystemMonitor.default_thread_count()
        self.thread_manager = ThreadManager(threads)
        self.output_dir = Path(config.paths.output_dir).expanduser()
        self.logger.info(
            f"LabApplication {APP_VERSION}: grupo {config.general.group}, "
            f"semilla {config.general.seed}, {self.thread_manager.max_threads} hilos"
        )

    # ------------------------------------------------------------------
    # Entorno de la ejecución
    # ------------------------------------------------------------------

    @property
    def group(self) -> GroupData:
        return group_data(self.config.general.group)

    def check_supported(self, command: str):
        """
        Raises:
            UnsupportedFeatureError: Grupo fuera de SU(2) salvo 'info' con enable_sun
        """
        name = self.config.general.group
        if name in SUPPORTED_GROUPS:
            return
        if name in OPTIONAL_GROUPS and self.config.general.enable_sun and command == "info":
            return
        raise UnsupportedFeatureError(
            f"El comando '{command}' no está soportado para {name}"
            + ("" if self.config.general.enable_sun or name not in OPTIONAL_GROUPS else " (enable_sun = false)")
        )

    def potential(self, which: str):
        spec = self.config.potentials.g if which == "g" else self.config.potentials.h
        return potential_from_spec(self.group, spec)

    def rng(self, stream: int) -> np.random.Generator:
        """Generador determinista por flujo, independiente del número de hilos"""
        return np.random.default_rng([self.config.general.seed, stream])

    def header(self, convention: str = "s") -> Dict[str, Any]:
        data = {
            "cqlab": APP_VERSION,
            "config_hash": self.config.config_hash(),
            "seed": self.config.general.seed,
            "group": self.config.general.group,
        }
        data.update(CONVENTION_IDS)
        data["state_convention"] = convention
        return data

    def state_matrix(self, ir: Irrep, rng: np.random.Generator) -> np.ndarray:
        """Matriz A de norma de Hilbert-Schmidt 1 según [State]"""
        d = ir.dim
        mode = self.config.state.a_mode
        if mode is MatrixMode.IDENTITY:
            return np.eye(d, dtype=complex) / np.sqrt(d)
        if mode in (MatrixMode.BASIS, MatrixMode.HIGHEST):
            row, col = (0, 0) if mode is MatrixMode.HIGHEST else (self.config.state.a_row, self.config.state.a_col)
            if mode is MatrixMode.BASIS and (row >= d or col >= d) and d > 1:
                raise ConfigError(f"E_({row},{col}) no cabe en dimensión {d}")
            a = np.zeros((d, d), dtype=complex)
            a[min(row, d - 1), min(col, d - 1)] = 1.0
            return a
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        return a / np.linalg.norm(a)

    def sample_points(self) -> List[CotangentPoint]:
        """Puntos (x, Ad_{x2} xi_plus) con marcos aleatorios de [Points]"""
        g = self.group
        rng = np.random.default_rng(self.config.points.frame_seed)
        xi_plus = chamber_point_matrix(g, self.config.points.xi)
        points = []
        for _ in range(self.config.points.count):
            x = random_group_element(g.n, rng)
            x2 = random_group_element(g.n, rng)
            points.append(CotangentPoint(x, x2 @ xi_plus @ x2.conj().T))
        return points

    def weights(self) -> List[Tuple[int, ...]]:
        return list(self.config.weights.lambdas)

    # ------------------------------------------------------------------
    # Ejecución
    # ------------------------------------------------------------------

    def run(self, command: str) -> CommandResult:
        """
        Ejecuta un comando y escribe sus artefactos

        Raises:
            UnsupportedFeatureError: Si el grupo no soporta el comando
            ConfigError: Si falta un comando o la configuración no encaja
        """
        self.check_supported(command)
        driver: Optional[Callable[[], CommandResult]] = getattr(self, f"cmd_{command}", None)
        if driver is None:
            raise ConfigError(f"Comando desconocido: {command}")

        self.monitor.start(command)
        result = driver()
        report = self.monitor.stop()

        self._write_artifacts(result)
        summary = {
            "command": command,
            "artifact": result.artifact.name if result.artifact else None,
            "artifact_sha256": FileUtils.get_file_hash(str(result.artifact)) if result.artifact else None,
            "passed": result.passed,
            "checks": [check.to_dict() for check in result.checks],
            "header": self.header(),
            "resources": report.to_dict() if report else {},
        }
        FileUtils.write_json(str(self.output_dir / f"{command}_summary.json"), summary)

        for check in result.checks:
            if not check.passed:
                self.logger.error(
                    f"Verificación fallida '{check.name}': {check.value:.3e} (umbral {check.threshold:.3e})"
                )
        return result

    def verify(self, result: CommandResult):
        """
        Raises:
            ToleranceFailure: Si alguna verificación del comando no se cumplió
        """
        failed = [check.name for check in result.checks if not check.passed]
        if failed:
            raise ToleranceFailure(
                f"El comando '{result.command}' terminó con verificaciones fallidas", detail=", ".join(failed)
            )

    def _write_artifacts(self, result: CommandResult):
        FileUtils.ensure_directory(str(self.output_dir))
        if result.data is not None:
            path = self.output_dir / f"{result.command}.json"
            FileUtils.write_json(str(path), result.data)
        else:
            path = self.output_dir / f"{result.command}.csv"
            FileUtils.write_csv(str(path), self.header(), result.columns, result.rows)
        result.artifact = path
        self.logger.info(f"Artefacto escrito: {path}")

    # ------------------------------------------------------------------
    # Comandos
    # ------------------------------------------------------------------

    @log_execution_time(_logger)
    def cmd_info(self) -> CommandResult:
        """Datos del grupo, tabla de dimensiones y fibras de Bohr-Sommerfeld"""
        g = self.group
        result = CommandResult("info")
        rank = g.rank
        table = []
        mismatches = 0
        for lam in product(range(4), repeat=rank):
            if sum(lam) > 3:
                continue
            dim = weyl_dimension(g, lam)
            weights = enumerate_weights(g, lam)
            mismatches += int(sum(m for _, m in weights) != dim)
            table.append(
                {
                    "lambda": weight_label(lam),
                    "dim": dim,
                    "weights": [{"nu": weight_label(nu), "multiplicity": m} for nu, m in weights],
                }
            )
        bs = [p.tolist() for p in bs_points(g, self.config.scan.bs_upper)]
        result.data = {
            "header": self.header(),
            "group": g.to_dict(),
            "dimensions": table,
            "bs_points": bs,
            "bs_window": [0.0, self.config.scan.bs_upper],
            "dependencies": DependencyChecker().get_dependency_report(),
        }
        result.add_max_check("weight_multiplicity_mismatches", [mismatches], 0.5)
        result.lines = [
            f"grupo: {g.name} (rango {rank}, dim {g.dim})",
            f"rho: {g.rho.astype(int).tolist()}",
            f"raíces positivas: {g.positive_roots.astype(int).tolist()}",
            "dimensiones: " + ", ".join(f"{row['lambda']}->{row['dim']}" for row in table),
            f"puntos BS en (0, {self.config.scan.bs_upper:g}]: {bs}",
        ]
        return result

    @log_execution_time(_logger)
    def cmd_harmonics(self) -> CommandResult:
        """Reconstrucción armónica y comprobación por cuadratura en el toro"""
        g = self.group
        g_pot = self.potential("g") + self.potential("h")
        points = self.sample_points()
        nodes = self.config.quadrature.torus_nodes

        def cell(index: int, lam) -> Dict[str, Any]:
            ir = irrep(g, lam)
            rng = self.rng(100 + index)
            rows, recon, quad = [], [], []
            for k, p in enumerate(points):
                a = self.state_matrix(ir, rng)
                table = harmonics(g_pot, ir, a, p)
                direct = matrix_coeff(g_pot, ir, a, p)
                scale = max(1.0, abs(direct))
                recon.append(abs(table.total() - direct) / scale)
                by_torus = harmonics_by_quadrature(g_pot, ir, a, p, nodes)
                for nu, value in table.entries.items():
                    err = abs(by_torus[nu] - value) / scale
                    quad.append(err)
                    rows.append((weight_label(ir.highest), k, weight_label(nu), value.real, value.imag, err, recon[-1]))
            return {"rows": rows, "recon": recon, "quad": quad}

        cells = [((i, lam), (lambda i=i, lam=lam: cell(i, lam))) for i, lam in enumerate(self.weights())]
        outputs = self.thread_manager.run_cells(cells)

        result = CommandResult(
            "harmonics",
            columns=["lambda", "point", "nu", "harmonic_re", "harmonic_im", "quadrature_error", "reconstruction_error"],
        )
        for out in outputs:
            result.rows.extend(out["rows"])
        tol = self.config.tolerance
        result.add_max_check("reconstruction", [v for o in outputs for v in o["recon"]], tol("harmonic_reconstruction"))
        result.add_max_check("torus_quadrature", [v for o in outputs for v in o["quad"]], tol("harmonic_quadrature"))
        return result

    @log_execution_time(_logger)
    def cmd_converge(self) -> CommandResult:
        """Perfil de convergencia hacia F_{lambda, A} a lo largo del rayo"""
        g = self.group
        g_pot, h = self.potential("g"), self.potential("h")
        p = self.sample_points()[0]
        ts = self.config.grid.values()

        def cell(index: int, lam):
            ir = irrep(g, lam)
            a = self.state_matrix(ir, self.rng(200 + index))
            return ir, convergence_profile(g_pot, h, ir, a, p, ts)

        lams = [lam for lam in self.weights() if any(lam)]
        cells = [((i, lam), (lambda i=i, lam=lam: cell(i, lam))) for i, lam in enumerate(lams)]
        outputs = self.thread_manager.run_cells(cells)

        result = CommandResult(
            "converge",
            columns=["lambda", "t", "rescaled_re", "rescaled_im", "error", "fitted_rate", "predicted_rate"],
        )
        tol = self.config.tolerance("convergence_rate")
        for ir, profile in outputs:
            label = weight_label(ir.highest)
            for t, rescaled, error in profile.rows:
                result.rows.append(
                    (label, t, rescaled.real, rescaled.imag, error, profile.fitted_rate, profile.predicted_rate)
                )
            errors = [row[2] for row in profile.rows]
            if np.isfinite(profile.fitted_rate) and np.isfinite(profile.predicted_rate):
                deviation = abs(profile.rate_ratio - 1.0)
                result.checks.append(
                    Check(f"rate_ratio {label}", deviation, tol, bool(deviation <= tol), f"R2={profile.r_squared:.6f}")
                )
            else:
                result.add_max_check(f"single_harmonic {label}", errors, 1e-12)
        return result

    @log_execution_time(_logger)
    def cmd_laplace(self) -> CommandResult:
        """Lema de Laplace: error frente a P(a)^2 a tiempos t y 10 t"""
        h = self.potential("h")
        ts = self.config.grid.values()

        def cell(lam, t):
            return laplace_test(h, lam, t), laplace_test(h, lam, 10.0 * t)

        keys = [(lam, t) for lam in self.weights() for t in ts]
        outputs = self.thread_manager.run_cells([(k, (lambda k=k: cell(*k))) for k in keys])

        result = CommandResult(
            "laplace", columns=["lambda", "t", "value", "limit", "error", "error_10t", "ratio"]
        )
        low = self.config.tolerance("laplace_ratio_low")
        high = self.config.tolerance("laplace_ratio_high")
        bad = 0
        for (lam, t), (first, second) in zip(keys, outputs):
            ratio = first.error / second.error if second.error != 0 else float("inf")
            bad += int(not (low <= ratio <= high))
            result.rows.append((weight_label(lam), t, first.value, first.limit, first.error, second.error, ratio))
        result.checks.append(Check("ratio_out_of_range", bad, 0.5, bad == 0, f"[{low:g}, {high:g}]"))
        return result

    @log_execution_time(_logger)
    def cmd_bs(self) -> CommandResult:
        """Barrido de la monodromía de Bohr-Sommerfeld"""
        g = self.group
        step = self.config.scan.bs_step
        rows = bs_scan(g, self.config.scan.bs_upper, step)
        result = CommandResult("bs", columns=["s", "monodromy_re", "monodromy_im", "distance_to_1", "lattice"])
        lattice_failures, separation = 0, []
        for s, m in rows:
            on_lattice = abs(s - round(s)) < 1e-12
            dist = abs(m - 1.0)
            if on_lattice:
                lattice_failures += int(m != 1.0)
            elif abs(s - round(s)) > step + 1e-12:
                separation.append(dist)
            result.rows.append((s, m.real, m.imag, dist, on_lattice))
        tol = self.config.tolerance("bs_separation")
        result.checks.append(Check("lattice_exact", lattice_failures, 0.5, lattice_failures == 0))
        min_sep = min(separation) if separation else float("inf")
        result.checks.append(Check("off_lattice_separation", min_sep, tol, bool(min_sep > tol)))
        return result

    @log_execution_time(_logger)
    def cmd_norms(self) -> CommandResult:
        """Normas de los estados a lo largo del rayo frente a tr(A^*A)/d"""
        g = self.group
        g_pot, h = self.potential("g"), self.potential("h")
        casimir_ray = g_pot.is_zero and h.tag == "quadratic-Casimir"
        nodes = self.config.quadrature.radial_nodes
        half_form_calibration(g)

        def cell(index: int, lam, t: float):
            ir = irrep(g, lam)
            a = self.state_matrix(ir, self.rng(300 + index))
            if t == 0 and g_pot.is_zero:
                st = schrodinger_state(g, lam, a)
            else:
                st = kahler_state(g, lam, a, base=g_pot, ray=h, time=t)
            target = float(np.real(np.trace(a.conj().T @ a))) / ir.dim
            return state_norm(st, nodes=nodes).value, target

        keys = [(i, lam, t) for i, lam in enumerate(self.weights()) for t in self.config.grid.values()]
        outputs = self.thread_manager.run_cells([(k, (lambda k=k: cell(*k))) for k in keys])

        result = CommandResult("norms", columns=["lambda", "t", "norm", "target", "deviation"])
        deviations = []
        for (_, lam, t), (norm, target) in zip(keys, outputs):
            deviations.append(abs(norm - target))
            result.rows.append((weight_label(lam), t, norm, target, norm - target))
        if casimir_ray:
            result.add_max_check("unitarity", deviations, self.config.tolerance("norm_unitarity"))
        else:
            self.logger.info("Rayo no cuadrático: normas informativas, sin verificación")
        return result

    @log_execution_time(_logger)
    def cmd_plancherel(self) -> CommandResult:
        """Identidad de Plancherel por cuadratura de Weyl, contrastada con la ortogonalidad exacta y con Phi"""
        g = self.group
        rng = self.rng(400)
        cases = [
            ("character_1", peter_weyl_function(g, {(1,): np.eye(2)})),
            ("constant", peter_weyl_function(g, {(0,): np.ones((1, 1))})),
        ]
        for k in range(PLANCHEREL_RANDOM_CASES):
            cases.append((f"random_{k:02d}", random_peter_weyl_sum(g, 4, rng)))

        records, exact_diff, quad_diff, kw_diff, block_diff = [], [], [], [], []
        for name, f in cases:
            exact = plancherel_check(f, "exact")
            quad = plancherel_check(f, "quadrature")
            kw_total = sum(kw_norm_squared(g, st) for st in transport_to_kw(g, IsotypicVector(dict(f.blocks))))
            order = f.bandwidth + 1
            via_kw = fourier_blocks_via_kw(g, f)
            blocks = max(float(np.max(np.abs(fourier_hat(g, f, lam, order) - m))) for lam, m in via_kw.items())
            exact_diff.append(exact.difference)
            quad_diff.append(quad.difference)
            kw_diff.append(abs(kw_total - quad.lhs))
            block_diff.append(blocks)
            records.append(
                {
                    "name": name,
                    "blocks": [weight_label(lam) for lam in f.blocks],
                    **quad.to_dict(),
                    "orthogonality": exact.to_dict(),
                    "kw_norm_squared": kw_total,
                    "fourier_vs_kw_blocks": blocks,
                }
            )

        result = CommandResult("plancherel")
        tol = self.config.tolerance
        result.add_max_check("plancherel", quad_diff, tol("plancherel_quadrature"))
        result.add_max_check("orthogonality", exact_diff, tol("plancherel"))
        result.add_max_check("kw_parseval", kw_diff, tol("norm_unitarity"))
        result.add_max_check("fourier_vs_kw", block_diff, tol("plancherel_quadrature"))
        result.data = {"header": self.header(), "cases": records}
        return result

    @log_execution_time(_logger)
    def cmd_gcst(self) -> CommandResult:
        """Composición, consistencia puntual y límite de pares de la gCST"""
        g = self.group
        g_pot, h = self.potential("g"), self.potential("h")
        ts = self.config.grid.values()
        points = self.sample_points()
        tol = self.config.tolerance
        result = CommandResult(
            "gcst", columns=["section", "lambda", "t", "value_re", "value_im", "reference_re", "reference_im", "error"]
        )

        # Composición sobre coeficientes
        rng = self.rng(500)
        lams = self.weights()
        blocks = {irrep(g, lam).highest: self.state_matrix(irrep(g, lam), rng) for lam in lams[:2]}
        v = IsotypicVector(blocks, StateTag(TagKind.SCHRODINGER))
        t1, t2 = (ts[0], ts[1]) if len(ts) > 1 else (ts[0], ts[0])
        twice = gcst(TransformSpec(h, t1), gcst(TransformSpec(h, t2), v))
        once = gcst(TransformSpec(h, t1 + t2), v)
        composition = abs(twice.tag.time - once.tag.time) + max(
            float(np.max(np.abs(twice.blocks[k] - once.blocks[k]))) for k in blocks
        )
        identity = gcst(TransformSpec(h, 0.0), v)
        composition += 0.0 if identity.tag.kind is TagKind.SCHRODINGER else 1.0
        result.rows.append(("composition", "", t1 + t2, composition, 0.0, 0.0, 0.0, composition))
        result.add_max_check("composition", [composition], tol("gcst_composition"))

        # Consistencia puntual e^{-t h(a)} e^{t h_hat} sigma = sigma^{g+th}
        source_pot = g_pot + h

        def pointwise(index: int, lam, t: float):
            ir = irrep(g, lam)
            a = self.state_matrix(ir, self.rng(600 + index))
            src = kahler_state(g, lam, a, base=source_pot, ray=h, time=0.0)
            return max(eigen_consistency_error(g, TransformSpec(h, t), src, p) for p in points)

        keys = [(i, lam, t) for i, lam in enumerate(lams) for t in ts]
        errors = self.thread_manager.run_cells([(k, (lambda k=k: pointwise(*k))) for k in keys])
        for (_, lam, t), err in zip(keys, errors):
            result.rows.append(("pointwise", weight_label(lam), t, err, 0.0, 0.0, 0.0, err))
        result.add_max_check("pointwise", errors, tol("gcst_pointwise"))

        # Pares frente a una gaussiana centrada en la fibra BS, anchura |a|/sqrt(2)
        pair_ts = list(ts) + ([PAIRING_CHECK_TIME] if PAIRING_CHECK_TIME not in ts else [])

        def pairing(index: int, lam, t: float):
            ir = irrep(g, lam)
            a = self.state_matrix(ir, self.rng(700 + index))
            support = np.asarray(ir.highest, dtype=float) + g.rho
            test = GaussianMatrixTest(support, float(np.linalg.norm(support)) / np.sqrt(2.0), ir.highest, a)
            limit = kw_pairing(g, kw_state(g, lam, a), test)
            st = transport_state(TransformSpec(h, t), schrodinger_state(g, lam, a))
            return kahler_pairing(g, st, test), limit

        keys = [(i, lam, t) for i, lam in enumerate(lams) for t in pair_ts]
        pairs = self.thread_manager.run_cells([(k, (lambda k=k: pairing(*k))) for k in keys])
        final = []
        for (_, lam, t), (value, limit) in zip(keys, pairs):
            rel = abs(value - limit) / abs(limit)
            result.rows.append(("pairing", weight_label(lam), t, value.real, value.imag, limit.real, limit.imag, rel))
            if t == PAIRING_CHECK_TIME:
                final.append(rel)
        result.add_max_check("pairing_limit", final, tol("pairing_relative"), f"t = {PAIRING_CHECK_TIME:g}")
        return result
