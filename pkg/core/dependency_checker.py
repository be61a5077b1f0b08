#!/usr/bin/env python
# -*- coding: utf-8 -*-

import importlib
from typing import Dict, List

from core.errors import DependencyError
from utils.logger import get_logger


class DependencyChecker:
    """Verificador de dependencias de Python del laboratorio"""

    def __init__(self):
        self.logger = get_logger("DependencyChecker")

        # Dependencias de Python: nombre visible -> módulo importable
        self.required_python_packages = {
            "numpy": "numpy",
            "scipy": "scipy",
            "PySide6": "PySide6.QtCore",
            "psutil": "psutil",
        }

        self.found_python_packages: Dict[str, str] = {}

    def check_all_dependencies(self) -> bool:
        """
        Verifica todas las dependencias requeridas

        Returns:
            True si todas las dependencias están disponibles

        Raises:
            DependencyError: Si falta algún paquete
        """
        self.logger.debug("Verificando dependencias...")
        missing = self._check_python_packages()
        if missing:
            missing_str = ", ".join(missing)
            self.logger.error(f"Dependencias faltantes: {missing_str}")
            raise DependencyError(f"Paquetes faltantes: {missing_str}")
        self.logger.debug("Todas las dependencias verificadas correctamente")
        return True

    def _check_python_packages(self) -> List[str]:
        """Verifica paquetes de Python requeridos"""
        missing_packages = []

        for name, module in self.required_python_packages.items():
            try:
                imported = importlib.import_module(module)
                root = importlib.import_module(module.split(".")[0])
                self.found_python_packages[name] = getattr(root, "__version__", getattr(imported, "__version__", "?"))
            except ImportError:
                self.logger.error(f"Paquete Python faltante: {name} ({module})")
                missing_packages.append(name)

        return missing_packages

    def get_dependency_report(self) -> Dict[str, str]:
        """Versiones encontradas (para el resumen JSON de info)"""
        if not self.found_python_packages:
            self._check_python_packages()
        return dict(sorted(self.found_python_packages.items()))
