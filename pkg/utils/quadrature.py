#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Reglas de cuadratura de Gauss-Legendre y mallas periódicas"""

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np


@lru_cache(maxsize=64)
def _leggauss(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(lower: float, upper: float, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Regla de Gauss-Legendre trasladada al intervalo [lower, upper]

    Args:
        lower: Extremo inferior
        upper: Extremo superior
        nodes: Número de nodos

    Returns:
        Tupla (nodos, pesos)
    """
    x, w = _leggauss(int(nodes))
    half = 0.5 * (upper - lower)
    return lower + half * (x + 1.0), half * w


def composite_gauss_legendre(
    lower: float, upper: float, nodes: int, panels: int = 1
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Regla compuesta: `panels` subintervalos iguales con `nodes` nodos cada uno

    Returns:
        Tupla (nodos, pesos) concatenados en orden creciente
    """
    edges = np.linspace(lower, upper, panels + 1)
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(a, b, nodes)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def tensor_rule(
    rules: Sequence[Tuple[np.ndarray, np.ndarray]]
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Producto tensorial de reglas unidimensionales

    Returns:
        Tupla (puntos de forma (M, d), pesos de forma (M,))
    """
    grids = np.meshgrid(*[r[0] for r in rules], indexing="ij")
    weights = np.meshgrid(*[r[1] for r in rules], indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=-1)
    total = np.ones(points.shape[0])
    for w in weights:
        total = total * w.ravel()
    return points, total


def periodic_rule(period: float, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Malla uniforme en [0, period) con pesos normalizados a suma 1"""
    x = period * np.arange(nodes) / nodes
    return x, np.full(nodes, 1.0 / nodes)
