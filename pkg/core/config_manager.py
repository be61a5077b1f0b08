#!/usr/bin/env python
# -*- coding: utf-8 -*-

import configparser
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from core.errors import ConfigError
from models.config_models import (
    GeneralConfig,
    GridConfig,
    PathConfig,
    PointConfig,
    PotentialConfig,
    QuadratureConfig,
    RunConfig,
    ScanConfig,
    StateConfig,
    WeightConfig,
)
from utils.constants import CONFIG_FILE, DEFAULT_TOLERANCES, OUTPUT_DIR, OUTPUT_DIR_ENV
from utils.logger import get_logger


def _float_list(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _weight_list(text: str) -> List[tuple]:
    weights = []
    for item in text.split(";"):
        if item.strip():
            weights.append(tuple(int(v) for v in item.split(",") if v.strip()))
    return weights


class ConfigManager:
    """Gestiona la configuración INI de una ejecución del laboratorio"""

    def __init__(self, config_path: Optional[str] = None):
        self.logger = get_logger("ConfigManager")
        self.config = configparser.ConfigParser()

        # Ruta explícita: debe existir; ruta por defecto: opcional
        self.explicit = config_path is not None
        self.config_file = Path(config_path) if config_path else Path(CONFIG_FILE)

        self.load_config()

    def load_config(self) -> configparser.ConfigParser:
        """
        Carga la configuración desde archivo o usa la de por defecto

        Raises:
            ConfigError: Si el archivo indicado no existe o no se puede leer
        """
        self.logger.info("Cargando configuración...")
        defaults = self._get_default_config()

        if self.config_file.exists():
            self.logger.info(f"Configuración encontrada en: {self.config_file}")
            try:
                self.config.read(self.config_file, encoding="utf-8")
            except configparser.Error as e:
                raise ConfigError(f"Error leyendo {self.config_file}: {str(e)}") from e
            self._validate_config(defaults)
        elif self.explicit:
            raise ConfigError(f"No existe el archivo de configuración: {self.config_file}")
        else:
            self.logger.info("Usando configuración por defecto...")
            self.config.read_dict(defaults)

        return self.config

    def _get_default_config(self) -> Dict[str, Dict[str, Any]]:
        """Retorna la configuración por defecto"""
        return {
            "General": {
                "group": "SU(2)",
                "seed": "20240601",
                "threads": "0",
                "enable_sun": "false",
                "log_level": "INFO",
            },
            "Potentials": {
                "g": "zero",
                "h": "quadratic",
            },
            "Weights": {
                "lambdas": "",
            },
            "State": {
                "a_mode": "random",
                "a_row": "0",
                "a_col": "0",
            },
            "Grid": {
                "t_start": "10",
                "t_stop": "40",
                "t_count": "13",
                "spacing": "linear",
                "t_values": "",
            },
            "Points": {
                "xi": "",
                "frame_seed": "7",
                "count": "3",
            },
            "Quadrature": {
                "haar_order": "0",
                "torus_nodes": "128",
                "radial_nodes": "200",
                "chamber_upper": "0",
            },
            "Scan": {
                "bs_upper": "6",
                "bs_step": "0.01",
            },
            "Paths": {
                "output_dir": str(OUTPUT_DIR),
                "log_dir": "",
            },
            "Tolerances": {key: f"{value:g}" for key, value in DEFAULT_TOLERANCES.items()},
        }

    def _validate_config(self, defaults: Dict[str, Dict[str, Any]]):
        """Añade secciones y opciones faltantes con sus valores por defecto"""
        for section, options in defaults.items():
            if not self.config.has_section(section):
                self.config.add_section(section)
                self.logger.debug(f"Sección faltante '{section}' añadida a config")

            for option, default_value in options.items():
                if not self.config.has_option(section, option):
                    self.config.set(section, option, str(default_value))
                    self.logger.debug(
                        f"Opción faltante '{section}.{option}' añadida con valor por defecto"
                    )

    def _read(self, reader: Callable[[str, str], Any], section: str, option: str) -> Any:
        try:
            return reader(section, option)
        except (configparser.Error, ValueError) as e:
            raise ConfigError(f"Valor inválido en [{section}] {option}: {str(e)}") from e

    # Lectores tipados: un valor ilegible es un ConfigError con su ubicación
    def get(self, section: str, option: str) -> str:
        return self._read(self.config.get, section, option).strip()

    def getboolean(self, section: str, option: str) -> bool:
        return self._read(self.config.getboolean, section, option)

    def getint(self, section: str, option: str) -> int:
        return self._read(self.config.getint, section, option)

    def getfloat(self, section: str, option: str) -> float:
        return self._read(self.config.getfloat, section, option)

    def getfloats(self, section: str, option: str) -> List[float]:
        return self._read(lambda s, o: _float_list(self.config.get(s, o)), section, option)

    def getweights(self, section: str, option: str) -> List[tuple]:
        return self._read(lambda s, o: _weight_list(self.config.get(s, o)), section, option)

    def to_run_config(self, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
        """
        Convierte la configuración a RunConfig tipada y validada

        Args:
            overrides: Valores de la línea de comandos (seed, threads, output_dir)

        Raises:
            ConfigError: Si algún valor no se puede interpretar o no es válido
        """
        overrides = overrides or {}
        run = RunConfig(
            general=GeneralConfig(
                group=self.get("General", "group").upper(),
                seed=self.getint("General", "seed"),
                threads=self.getint("General", "threads"),
                enable_sun=self.getboolean("General", "enable_sun"),
                log_level=self.get("General", "log_level").upper(),
            ),
            potentials=PotentialConfig(g=self.get("Potentials", "g"), h=self.get("Potentials", "h")),
            weights=WeightConfig(lambdas=self.getweights("Weights", "lambdas")),
            state=StateConfig.from_dict(
                {
                    "a_mode": self.get("State", "a_mode").lower(),
                    "a_row": self.getint("State", "a_row"),
                    "a_col": self.getint("State", "a_col"),
                }
            ),
            grid=GridConfig.from_dict(
                {
                    "t_start": self.getfloat("Grid", "t_start"),
                    "t_stop": self.getfloat("Grid", "t_stop"),
                    "t_count": self.getint("Grid", "t_count"),
                    "spacing": self.get("Grid", "spacing").lower(),
                    "t_values": self.getfloats("Grid", "t_values"),
                }
            ),
            points=PointConfig(
                xi=self.getfloats("Points", "xi"),
                frame_seed=self.getint("Points", "frame_seed"),
                count=self.getint("Points", "count"),
            ),
            quadrature=QuadratureConfig(
                haar_order=self.getint("Quadrature", "haar_order"),
                torus_nodes=self.getint("Quadrature", "torus_nodes"),
                radial_nodes=self.getint("Quadrature", "radial_nodes"),
                chamber_upper=self.getfloat("Quadrature", "chamber_upper"),
            ),
            scan=ScanConfig(bs_upper=self.getfloat("Scan", "bs_upper"), bs_step=self.getfloat("Scan", "bs_step")),
            paths=PathConfig(output_dir=self.get("Paths", "output_dir"), log_dir=self.get("Paths", "log_dir")),
            tolerances={key: self.getfloat("Tolerances", key) for key in self.config.options("Tolerances")},
        )

        # Vacíos: pesos (k, 0, ..., 0) con k <= 3 y xi = (1.3, ..., 1.3)
        rank = run.rank
        if not run.weights.lambdas and rank > 0:
            run.weights.lambdas = [(k,) + (0,) * (rank - 1) for k in range(4)]
        if not run.points.xi and rank > 0:
            run.points.xi = [1.3] * rank

        env_dir = os.environ.get(OUTPUT_DIR_ENV)
        if env_dir:
            run.paths.output_dir = env_dir
        if overrides.get("output_dir"):
            run.paths.output_dir = str(overrides["output_dir"])
        if overrides.get("seed") is not None:
            run.general.seed = int(overrides["seed"])
        if overrides.get("threads") is not None:
            run.general.threads = int(overrides["threads"])

        errors = run.validate()
        if errors:
            for error in errors:
                self.logger.error(f"Configuración inválida: {error}")
            raise ConfigError("Configuración inválida", detail="; ".join(errors))
        return run
