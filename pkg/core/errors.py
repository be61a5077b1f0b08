#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Jerarquía de excepciones del laboratorio y sus códigos de salida"""

from typing import Optional

# Códigos de salida de la CLI
EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3


class LabError(Exception):
    """Excepción base de todos los errores del laboratorio"""

    exit_code = EXIT_TOLERANCE

    def __init__(self, message: str, detail: Optional[str] = None):
        super().__init__(message)
        self.detail = detail


class ConfigError(LabError):
    """Excepción para configuración inválida"""

    exit_code = EXIT_CONFIG


class DependencyError(LabError):
    """Excepción para dependencias faltantes"""

    exit_code = EXIT_CONFIG


class UnsupportedFeatureError(LabError):
    """Grupo o funcionalidad opcional no soportada"""

    exit_code = EXIT_UNSUPPORTED


class NonDominantWeightError(LabError):
    """El peso indicado no es dominante"""


class SingularStratumError(LabError):
    """Operación del estrato regular evaluada en un punto singular"""


class ConvergenceError(LabError):
    """El método de Newton no convergió"""


class QuadratureError(LabError):
    """El error de truncamiento de una cuadratura supera la tolerancia"""


class DegenerateRatioError(LabError):
    """Denominador nulo en un cociente de funciones F"""


class ToleranceFailure(LabError):
    """Una verificación numérica de un comando no se cumplió"""

    exit_code = EXIT_TOLERANCE
