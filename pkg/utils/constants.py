#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Constantes globales del laboratorio de cuantización en T*K"""

from pathlib import Path

# Versión de la aplicación
APP_VERSION = "1.0"
APP_NAME = "Cotangent Quantization Lab"

# Rutas de la aplicación
HOME_DIR = Path.home()
PROJECT_DIR = HOME_DIR / ".cqlab"
LOGS_DIR = PROJECT_DIR / "logs"
OUTPUT_DIR = Path("results")
CONFIG_FILE = Path("config.ini")

# Variable de entorno que reemplaza el directorio de salida
OUTPUT_DIR_ENV = "CQLAB_OUTPUT_DIR"

# Grupos soportados
SUPPORTED_GROUPS = ["SU(2)"]
OPTIONAL_GROUPS = ["SU(3)"]

# Umbral de regularidad (distancia mínima a las paredes de la cámara)
REGULARITY_THRESHOLD = 1e-8

# Newton para la inversa de Legendre
NEWTON_TOLERANCE = 1e-12
NEWTON_MAX_ITERATIONS = 100

# Paso relativo de diferencias finitas
FD_STEP = 1e-5

# Precisión de los CSV
CSV_SIGNIFICANT_DIGITS = 17

# Tolerancias por defecto de las verificaciones de la CLI
DEFAULT_TOLERANCES = {
    "harmonic_reconstruction": 1e-10,
    "harmonic_quadrature": 1e-9,
    "convergence_rate": 0.1,
    "laplace_ratio_low": 8.0,
    "laplace_ratio_high": 12.0,
    "bs_separation": 0.05,
    "norm_unitarity": 1e-6,
    "plancherel": 1e-10,
    "plancherel_quadrature": 1e-8,
    "gcst_composition": 1e-10,
    "gcst_pointwise": 1e-8,
    "pairing_relative": 1e-2,
    "log_asymptotic": 1e-3,
    "radial_tail": 1e-12,
}

# Subcomandos de la CLI
COMMANDS = ["info", "harmonics", "converge", "laplace", "bs", "norms", "plancherel", "gcst"]

# Tiempo en que se comprueba el par de Kähler frente al de Kirwin-Wu
PAIRING_CHECK_TIME = 100.0

# Número de sumas de Peter-Weyl aleatorias en plancherel
PLANCHEREL_RANDOM_CASES = 20

# Identificadores de convenciones escritos en la cabecera de cada artefacto
CONVENTION_IDS = {
    "form": "alpha2",
    "chamber_measure": "covolume1",
    "kak_gauge": "desc-eig/first-entry-positive/det-root",
    "hessian_frame": "metric",
    "half_form_calibration": "lambda1-E11-t1",
    "pairing_measure": "weyl-unit-metric",
}
