#!/usr/bin/env python
# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from models.group_models import ChamberPoint


@dataclass
class CotangentPoint:
    """
    Punto (x, xi) de T*K = K x k* en trivialización izquierda

    x es unitaria de determinante 1 y xi hermítica sin traza.
    """

    x: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=complex)
        self.xi = np.asarray(self.xi, dtype=complex)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x_re": self.x.real.tolist(),
            "x_im": self.x.imag.tolist(),
            "xi_re": self.xi.real.tolist(),
            "xi_im": self.xi.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CotangentPoint":
        x = np.asarray(data["x_re"]) + 1j * np.asarray(data["x_im"])
        xi = np.asarray(data["xi_re"]) + 1j * np.asarray(data["xi_im"])
        return cls(x, xi)


@dataclass
class TangentVector:
    """Vector tangente (xdot, xidot): xdot en k (trivialización izquierda), xidot en k*"""

    xdot: np.ndarray
    xidot: np.ndarray


@dataclass
class KAKFrame:
    """Descomposición x = x1 x2^{-1}, xi = Ad_{x2} xi_plus"""

    x1: np.ndarray
    xi_plus: ChamberPoint
    x2: np.ndarray
    gauge: str = "desc-eig/first-entry-positive/det-root"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x1": [self.x1.real.tolist(), self.x1.imag.tolist()],
            "xi_plus": self.xi_plus.to_dict(),
            "x2": [self.x2.real.tolist(), self.x2.imag.tolist()],
            "gauge": self.gauge,
        }


@dataclass
class HessianBlocks:
    """
    Hessiano de un potencial invariante en un punto regular de la cámara

    Attributes:
        torus: Operador r x r en el marco métrico (dL/dxi restringido a t*)
        roots: Pares (raíz positiva, autovalor <alpha, L>/<alpha, xi>)
    """

    torus: np.ndarray
    roots: List[Tuple[np.ndarray, float]] = field(default_factory=list)

    def root_eigenvalues(self) -> np.ndarray:
        return np.array([value for _, value in self.roots])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "torus": np.asarray(self.torus).tolist(),
            "roots": [
                {"root": np.asarray(root).astype(int).tolist(), "eigenvalue": float(value)}
                for root, value in self.roots
            ],
        }
