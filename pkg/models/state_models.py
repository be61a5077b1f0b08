#!/usr/bin/env python
# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from models.group_models import Weight, weight_label


class TagKind(Enum):
    """Polarización a la que pertenece un estado"""

    SCHRODINGER = "schrodinger"
    KAHLER = "kahler"
    KIRWIN_WU = "kirwin-wu"

    @classmethod
    def get_default(cls):
        """Retorna la polarización por defecto"""
        return cls.SCHRODINGER


class Convention(Enum):
    """
    Marco de semiforma en que se expresa el coeficiente de un estado

    S: coeficiente contra Omega_hat^{1/2}; SIGMA: contra Omega^{1/2}.
    """

    S = "s"
    SIGMA = "sigma"

    @classmethod
    def get_default(cls):
        """Retorna la convención por defecto"""
        return cls.S


@dataclass
class StateTag:
    """
    Etiqueta de polarización

    Para KAHLER el potencial es g_t = base + time * ray.
    """

    kind: TagKind = field(default_factory=TagKind.get_default)
    base: Any = None
    ray: Any = None
    time: float = 0.0

    def potential(self):
        """Potencial g_t de una etiqueta de Kähler"""
        if self.kind is not TagKind.KAHLER:
            return None
        if self.time == 0:
            return self.base
        return self.base + self.ray.scaled(self.time)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "base": None if self.base is None else self.base.to_dict(),
            "ray": None if self.ray is None else self.ray.to_dict(),
            "time": self.time,
        }


@dataclass
class QuantumState:
    """Estado sigma_{lambda, A} con su etiqueta de polarización"""

    weight: Weight
    matrix: np.ndarray
    tag: StateTag = field(default_factory=StateTag)
    convention: Convention = field(default_factory=Convention.get_default)
    group: str = "SU(2)"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "weight": weight_label(self.weight),
            "matrix_re": self.matrix.real.tolist(),
            "matrix_im": self.matrix.imag.tolist(),
            "tag": self.tag.to_dict(),
            "convention": self.convention.value,
            "group": self.group,
        }


@dataclass
class StateValue:
    """Coeficiente puntual de un estado y densidad de su semiforma"""

    coefficient: complex
    half_density: float

    @property
    def density(self) -> float:
        """|coef|^2 * densidad, independiente del marco de semiforma"""
        return float(abs(self.coefficient) ** 2 * self.half_density)


@dataclass
class TopFormValue:
    """
    Forma de grado máximo (n, 0) evaluada en un punto

    Las filas [E | F] describen las 1-formas Omega^j en el cobase real
    (omega^k, dxi^k); la forma es prefactor * wedge_j Omega^j.
    """

    rows: np.ndarray
    prefactor: complex = 1.0
    coefficient: complex = 1.0
    half_density: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "prefactor": [complex(self.prefactor).real, complex(self.prefactor).imag],
            "coefficient": [complex(self.coefficient).real, complex(self.coefficient).imag],
            "half_density": self.half_density,
        }


@dataclass
class HarmonicTable:
    """Armónicos T-equivariantes (f_hat)_nu de un coeficiente matricial"""

    highest: Weight
    entries: Dict[Weight, complex] = field(default_factory=dict)

    def total(self) -> complex:
        return complex(np.sum(list(self.entries.values())))

    def subleading(self) -> Dict[Weight, complex]:
        return {nu: v for nu, v in self.entries.items() if tuple(nu) != tuple(self.highest)}

    def to_rows(self) -> List[Tuple[str, float, float]]:
        return [(weight_label(nu), v.real, v.imag) for nu, v in self.entries.items()]


@dataclass
class KWStateData:
    """Estado de Kirwin-Wu: distribución soportada en mu_inv^{-1}(lambda + rho)"""

    weight: Weight
    matrix: np.ndarray
    support: np.ndarray
    normalization: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "weight": weight_label(self.weight),
            "support": np.asarray(self.support).tolist(),
            "normalization": self.normalization,
        }


@dataclass
class IsotypicVector:
    """Vector de H_{Q, Pi} como bloques A_lambda etiquetados"""

    blocks: Dict[Weight, np.ndarray]
    tag: StateTag = field(default_factory=StateTag)

    def copy(self) -> "IsotypicVector":
        return IsotypicVector({k: v.copy() for k, v in self.blocks.items()}, self.tag)


@dataclass
class TransformSpec:
    """Transformada coherente generalizada e^{t h_hat} e^{-t Q(h)}"""

    potential: Any
    time: float
    source: StateTag = field(default_factory=StateTag)


@dataclass
class ConvergenceProfile:
    """Perfil de convergencia de e^{-<lambda, L_t>} f^{g_t} hacia F"""

    rows: List[Tuple[float, complex, float]]
    fitted_rate: float
    r_squared: float
    predicted_rate: float

    @property
    def rate_ratio(self) -> float:
        if not np.isfinite(self.fitted_rate) or self.predicted_rate in (0.0, np.inf):
            return float("nan")
        return self.fitted_rate / self.predicted_rate


@dataclass
class LaplaceResult:
    """Resultado de una prueba del lema de Laplace"""

    t: float
    value: float
    limit: float

    @property
    def error(self) -> float:
        return self.value - self.limit


@dataclass
class PlancherelResult:
    """Ambos lados de la identidad de Plancherel"""

    lhs: float
    rhs: float
    method: str = "exact"

    @property
    def difference(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_dict(self) -> Dict[str, Any]:
        return {"lhs": self.lhs, "rhs": self.rhs, "difference": self.difference, "method": self.method}


@dataclass
class NormResult:
    """Norma al cuadrado de un estado con su estimación de cola"""

    value: float
    tail_estimate: float = 0.0
    nodes: int = 0
