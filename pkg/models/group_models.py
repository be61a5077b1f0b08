#!/usr/bin/env python
# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from utils.constants import REGULARITY_THRESHOLD

# Peso entero en la base de pesos fundamentales
Weight = Tuple[int, ...]


class GroupFamily(Enum):
    """Familias de grupos compactos disponibles"""

    SU = "SU"

    @classmethod
    def get_default(cls):
        """Retorna la familia por defecto"""
        return cls.SU


@dataclass
class GroupData:
    """
    Datos de Lie de SU(n) en coordenadas de pesos fundamentales

    La forma invariante sobre t* está normalizada con <alpha, alpha> = 2 y
    en estas coordenadas es la inversa de la matriz de Cartan.
    """

    name: str
    n: int
    cartan_matrix: np.ndarray
    form: np.ndarray
    simple_roots: np.ndarray
    positive_roots: np.ndarray
    rho: np.ndarray
    weyl_group: List[np.ndarray] = field(default_factory=list)
    family: GroupFamily = field(default_factory=GroupFamily.get_default)

    @property
    def rank(self) -> int:
        return self.n - 1

    @property
    def dim(self) -> int:
        return self.n * self.n - 1

    @property
    def covolume_factor(self) -> float:
        """Factor c tal que c*B tiene covolumen 1 sobre la red de pesos"""
        return float(np.linalg.det(self.form) ** (-1.0 / self.rank))

    @property
    def covolume_form(self) -> np.ndarray:
        return self.covolume_factor * self.form

    def pair(self, a: Any, b: Any) -> Any:
        """Producto <a, b> = a^T B b (admite lotes en el último eje)"""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return np.einsum("...i,ij,...j->...", a, self.form, b)

    def norm2(self, a: Any) -> Any:
        return self.pair(a, a)

    def weight_to_diag(self, s: Any) -> np.ndarray:
        """Entradas diagonales de la matriz hermítiana sin traza asociada a s"""
        s = np.asarray(s, dtype=float)
        k = np.arange(1, self.n)
        # omega_k <-> diag(1,...,1,0,...,0) - (k/n) I
        steps = (np.arange(self.n)[None, :] < k[:, None]).astype(float) - k[:, None] / self.n
        return s @ steps

    def diag_to_weight(self, d: Any) -> np.ndarray:
        """Coordenadas de peso de una diagonal ordenada de forma decreciente"""
        d = np.asarray(d, dtype=float)
        return d[..., :-1] - d[..., 1:]

    def root_pairings(self, s: Any) -> np.ndarray:
        """Valores <alpha, s> para todas las raíces positivas"""
        s = np.asarray(s, dtype=float)
        return s @ self.form @ self.positive_roots.T

    def is_regular(self, s: Any, threshold: float = REGULARITY_THRESHOLD) -> bool:
        """True si s está a distancia mayor que threshold de toda pared"""
        s = np.asarray(s, dtype=float)
        return bool(np.min(self.simple_root_pairings(s)) > threshold)

    def simple_root_pairings(self, s: Any) -> np.ndarray:
        # <alpha_i, s> = s_i porque A B = I
        return np.asarray(s, dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        """Convierte los datos del grupo a diccionario serializable"""
        return {
            "name": self.name,
            "rank": self.rank,
            "dim": self.dim,
            "cartan_matrix": self.cartan_matrix.astype(int).tolist(),
            "form": self.form.tolist(),
            "covolume_factor": self.covolume_factor,
            "simple_roots": self.simple_roots.astype(int).tolist(),
            "positive_roots": self.positive_roots.astype(int).tolist(),
            "rho": self.rho.astype(int).tolist(),
            "weyl_group_order": len(self.weyl_group),
        }


@dataclass
class ChamberPoint:
    """Punto de la cámara de Weyl cerrada en coordenadas de pesos"""

    coords: np.ndarray
    regular: bool = True

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=float)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)

    def to_dict(self) -> Dict[str, Any]:
        return {"coords": self.coords.tolist(), "regular": self.regular}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ChamberPoint":
        return cls(coords=np.asarray(data["coords"], dtype=float), regular=data.get("regular", True))


@dataclass
class DominantProjection:
    """Resultado de proyectar un punto de t* a la cámara"""

    point: ChamberPoint
    weyl_element: np.ndarray
    sign: int = 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "point": self.point.to_dict(),
            "weyl_element": self.weyl_element.astype(int).tolist(),
            "sign": self.sign,
        }


def as_weight(values: Any) -> Weight:
    """Convierte una secuencia a Weight (tupla de enteros)"""
    return tuple(int(round(v)) for v in np.atleast_1d(values))


def weight_label(weight: Optional[Weight]) -> str:
    """Etiqueta textual '(a,b,...)' para CSV y logs"""
    if weight is None:
        return ""
    return "(" + ",".join(str(int(v)) for v in weight) + ")"


@dataclass
class Irrep:
    """
    Representación irreducible unitaria de máximo peso

    Attributes:
        highest: Peso máximo lambda
        dim: Dimensión d_lambda
        weights: Peso de cada vector de la base (orden por altura decreciente)
        generators: Imágenes dπ de la base compacta -i sigma_a / 2
        chevalley: Imágenes de e, f, h
    """

    group: str
    highest: Weight
    dim: int
    weights: List[Weight]
    generators: np.ndarray
    chevalley: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def weight_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)

    def projector_diag(self, nu: Weight) -> np.ndarray:
        """Diagonal 0/1 del proyector P_nu"""
        return np.array([1.0 if tuple(w) == tuple(nu) else 0.0 for w in self.weights])

    def distinct_weights(self) -> List[Weight]:
        seen: List[Weight] = []
        for w in self.weights:
            if tuple(w) not in seen:
                seen.append(tuple(w))
        return seen

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "highest": list(self.highest),
            "dim": self.dim,
            "weights": [list(w) for w in self.weights],
        }
