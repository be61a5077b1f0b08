#!/usr/bin/env python
# -*- coding: utf-8 -*-

import hashlib
import json
import re
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

import numpy as np

from utils.constants import DEFAULT_TOLERANCES

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
POTENTIAL_TAGS = ["zero", "quadratic", "quartic"]


class MatrixMode(Enum):
    """Modos de construcción de la matriz A de los estados"""

    IDENTITY = "identity"
    BASIS = "basis"
    HIGHEST = "highest"
    RANDOM = "random"

    @classmethod
    def get_default(cls):
        """Retorna el modo por defecto"""
        return cls.RANDOM


class GridSpacing(Enum):
    """Espaciados de la malla de tiempos"""

    LINEAR = "linear"
    LOG = "log"

    @classmethod
    def get_default(cls):
        """Retorna el espaciado por defecto"""
        return cls.LINEAR


def _is_potential_spec(spec: str) -> bool:
    spec = spec.strip().lower()
    if spec in POTENTIAL_TAGS:
        return True
    if spec.startswith("radial:"):
        try:
            values = [float(v) for v in spec[len("radial:"):].split(",") if v.strip()]
        except ValueError:
            return False
        return bool(values) and values[0] > 0 and all(v >= 0 for v in values)
    return False


@dataclass
class GeneralConfig:
    """Configuración general de una ejecución"""

    group: str = "SU(2)"
    seed: int = 20240601
    threads: int = 0
    enable_sun: bool = False
    log_level: str = "INFO"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GeneralConfig":
        return cls(**data)

    def validate(self) -> List[str]:
        """Valida la configuración y retorna lista de errores"""
        errors = []

        if not re.fullmatch(r"SU\(\d+\)", self.group) or int(self.group[3:-1]) < 2:
            errors.append(f"Grupo desconocido: {self.group}")

        if self.seed < 0:
            errors.append("La semilla debe ser no negativa")

        if self.threads < 0 or self.threads > 256:
            errors.append("El número de hilos debe estar entre 0 (automático) y 256")

        if self.log_level not in LOG_LEVELS:
            errors.append("Nivel de log inválido")

        return errors


@dataclass
class PotentialConfig:
    """Potenciales g (base) y h (rayo) como especificaciones etiquetadas"""

    g: str = "zero"
    h: str = "quadratic"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PotentialConfig":
        return cls(**data)

    def validate(self) -> List[str]:
        errors = []
        if not _is_potential_spec(self.g):
            errors.append(f"Potencial g inválido: {self.g!r}")
        if not _is_potential_spec(self.h) or self.h.strip().lower() == "zero":
            errors.append(f"El potencial h debe ser uniformemente convexo: {self.h!r}")
        return errors


@dataclass
class WeightConfig:
    """Lista de pesos dominantes lambda"""

    lambdas: List[Tuple[int, ...]] = field(default_factory=lambda: [(0,), (1,), (2,), (3,)])

    def to_dict(self) -> Dict[str, Any]:
        return {"lambdas": [list(w) for w in self.lambdas]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WeightConfig":
        return cls(lambdas=[tuple(int(v) for v in w) for w in data.get("lambdas", [])])

    def validate(self, rank: int) -> List[str]:
        errors = []
        if not self.lambdas:
            errors.append("La lista de pesos no puede estar vacía")
        for w in self.lambdas:
            if len(w) != rank:
                errors.append(f"El peso {w} no tiene rango {rank}")
            elif any(v < 0 for v in w):
                errors.append(f"El peso {w} no es dominante")
        return errors


@dataclass
class StateConfig:
    """Construcción de la matriz A de cada estado"""

    a_mode: MatrixMode = field(default_factory=MatrixMode.get_default)
    a_row: int = 0
    a_col: int = 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["a_mode"] = self.a_mode.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StateConfig":
        config_data = data.copy()
        if "a_mode" in config_data and not isinstance(config_data["a_mode"], MatrixMode):
            config_data["a_mode"] = MatrixMode(config_data["a_mode"])
        return cls(**config_data)

    def validate(self) -> List[str]:
        errors = []
        if self.a_row < 0 or self.a_col < 0:
            errors.append("Los índices de la matriz base deben ser no negativos")
        return errors


@dataclass
class GridConfig:
    """Malla de tiempos t del rayo de Mabuchi"""

    t_start: float = 10.0
    t_stop: float = 40.0
    t_count: int = 13
    spacing: GridSpacing = field(default_factory=GridSpacing.get_default)
    t_values: List[float] = field(default_factory=list)

    def values(self) -> List[float]:
        """Tiempos explícitos o la malla lineal/logarítmica"""
        if self.t_values:
            return [float(t) for t in self.t_values]
        if self.spacing is GridSpacing.LOG:
            return [float(t) for t in np.geomspace(self.t_start, self.t_stop, self.t_count)]
        return [float(t) for t in np.linspace(self.t_start, self.t_stop, self.t_count)]

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["spacing"] = self.spacing.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GridConfig":
        config_data = data.copy()
        if "spacing" in config_data and not isinstance(config_data["spacing"], GridSpacing):
            config_data["spacing"] = GridSpacing(config_data["spacing"])
        return cls(**config_data)

    def validate(self) -> List[str]:
        errors = []
        if self.t_values:
            if any(t < 0 for t in self.t_values):
                errors.append("Los tiempos deben ser no negativos")
            return errors
        if self.t_count < 1:
            errors.append("La malla de tiempos no puede estar vacía")
        if self.t_start < 0 or self.t_stop < self.t_start:
            errors.append("Se requiere 0 <= t_start <= t_stop")
        if self.spacing is GridSpacing.LOG and self.t_start <= 0:
            errors.append("La malla logarítmica requiere t_start > 0")
        return errors


@dataclass
class PointConfig:
    """Puntos de prueba: xi_plus en la cámara y marcos aleatorios"""

    xi: List[float] = field(default_factory=lambda: [1.3])
    frame_seed: int = 7
    count: int = 3

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PointConfig":
        return cls(**data)

    def validate(self, rank: int) -> List[str]:
        errors = []
        if len(self.xi) != rank:
            errors.append(f"xi debe tener {rank} coordenadas")
        elif any(v <= 0 for v in self.xi):
            errors.append("xi debe estar en el interior de la cámara")
        if self.count < 1:
            errors.append("Se necesita al menos un punto de prueba")
        return errors


@dataclass
class QuadratureConfig:
    """Órdenes de cuadratura (0 = automático)"""

    haar_order: int = 0
    torus_nodes: int = 128
    radial_nodes: int = 200
    chamber_upper: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuadratureConfig":
        return cls(**data)

    def validate(self) -> List[str]:
        errors = []
        if self.haar_order < 0 or self.haar_order > 40:
            errors.append("El orden de Haar debe estar entre 0 y 40")
        if self.torus_nodes < 8:
            errors.append("Se necesitan al menos 8 nodos en el toro")
        if self.radial_nodes < 16:
            errors.append("Se necesitan al menos 16 nodos radiales")
        if self.chamber_upper < 0:
            errors.append("El truncamiento de la cámara debe ser no negativo")
        return errors


@dataclass
class ScanConfig:
    """Barrido de Bohr-Sommerfeld"""

    bs_upper: float = 6.0
    bs_step: float = 0.01

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScanConfig":
        return cls(**data)

    def validate(self) -> List[str]:
        errors = []
        if self.bs_upper <= 0:
            errors.append("bs_upper debe ser positivo")
        if self.bs_step <= 0 or self.bs_step > self.bs_upper:
            errors.append("bs_step debe estar en (0, bs_upper]")
        return errors


@dataclass
class PathConfig:
    """Rutas de salida"""

    output_dir: str = "results"
    log_dir: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PathConfig":
        return cls(**data)

    def validate(self) -> List[str]:
        return [] if self.output_dir.strip() else ["El directorio de salida no puede estar vacío"]


@dataclass
class RunConfig:
    """Configuración completa de una ejecución"""

    general: GeneralConfig = field(default_factory=GeneralConfig)
    potentials: PotentialConfig = field(default_factory=PotentialConfig)
    weights: WeightConfig = field(default_factory=WeightConfig)
    state: StateConfig = field(default_factory=StateConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    points: PointConfig = field(default_factory=PointConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    paths: PathConfig = field(default_factory=PathConfig)
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    @property
    def rank(self) -> int:
        try:
            return int(self.general.group[3:-1]) - 1
        except ValueError:
            return 0

    def tolerance(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOLERANCES[key]))

    def to_dict(self) -> Dict[str, Any]:
        """Convierte la configuración completa a diccionario"""
        return {
            "general": self.general.to_dict(),
            "potentials": self.potentials.to_dict(),
            "weights": self.weights.to_dict(),
            "state": self.state.to_dict(),
            "grid": self.grid.to_dict(),
            "points": self.points.to_dict(),
            "quadrature": self.quadrature.to_dict(),
            "scan": self.scan.to_dict(),
            "paths": self.paths.to_dict(),
            "tolerances": dict(sorted(self.tolerances.items())),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Crea la configuración completa desde un diccionario"""
        tolerances = dict(DEFAULT_TOLERANCES)
        tolerances.update({k: float(v) for k, v in data.get("tolerances", {}).items()})
        return cls(
            general=GeneralConfig.from_dict(data.get("general", {})),
            potentials=PotentialConfig.from_dict(data.get("potentials", {})),
            weights=WeightConfig.from_dict(data.get("weights", {"lambdas": [[0], [1], [2], [3]]})),
            state=StateConfig.from_dict(data.get("state", {})),
            grid=GridConfig.from_dict(data.get("grid", {})),
            points=PointConfig.from_dict(data.get("points", {})),
            quadrature=QuadratureConfig.from_dict(data.get("quadrature", {})),
            scan=ScanConfig.from_dict(data.get("scan", {})),
            paths=PathConfig.from_dict(data.get("paths", {})),
            tolerances=tolerances,
        )

    def validate(self) -> List[str]:
        """Valida toda la configuración"""
        errors = []
        errors.extend(self.general.validate())
        errors.extend(self.potentials.validate())
        errors.extend(self.weights.validate(self.rank))
        errors.extend(self.state.validate())
        errors.extend(self.grid.validate())
        errors.extend(self.points.validate(self.rank))
        errors.extend(self.quadrature.validate())
        errors.extend(self.scan.validate())
        errors.extend(self.paths.validate())
        unknown = sorted(set(self.tolerances) - set(DEFAULT_TOLERANCES))
        if unknown:
            errors.append(f"Tolerancias desconocidas: {', '.join(unknown)}")
        if any(v <= 0 for v in self.tolerances.values()):
            errors.append("Las tolerancias deben ser positivas")
        return errors

    def is_valid(self) -> bool:
        """Verifica si la configuración es válida"""
        return len(self.validate()) == 0

    def config_hash(self) -> str:
        """
        sha256 del JSON canónico de la parte numérica

        Excluye rutas e hilos para que no alteren los artefactos.
        """
        data = self.to_dict()
        data.pop("paths")
        data["general"].pop("threads")
        canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
