#!/usr/bin/env python3

import os
import sys

from setuptools import setup

# Verificar versión de Python
if sys.version_info < (3, 9):
    sys.exit("Python 3.9 o superior es requerido para Cotangent Quantization Lab")


def read_file(filename):
    """Lee el contenido de un archivo"""
    try:
        with open(filename, "r", encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        return ""


def get_requirements():
    """Obtiene la lista de dependencias"""
    requirements_file = "requirements.txt"
    if os.path.exists(requirements_file):
        with open(requirements_file, "r", encoding="utf-8") as fh:
            return [
                line.strip() for line in fh if line.strip() and not line.startswith("#")
            ]
    return []


# Metadatos del proyecto
NAME = "cotangent-quantization-lab"
VERSION = "1.0.0"
DESCRIPTION = "Laboratorio numérico de cuantización geométrica con semiformas en T*K"
LONG_DESCRIPTION = read_file("README.md")
REQUIREMENTS = get_requirements()

setup(
    name=NAME,
    version=VERSION,
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    packages=["core", "models", "services", "utils", "workers"],
    py_modules=["main"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=REQUIREMENTS,
    extras_require={"dev": ["pytest>=7.0"]},
    entry_points={
        "console_scripts": ["cqlab=main:main"],
    },
    include_package_data=True,
    package_data={"": ["*.md", "*.ini"]},
)
