#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Logging del laboratorio: stderr para la consola (stdout queda para el
resumen de los comandos) y un archivo opcional por ejecución.
"""

import logging
import sys
import time
from datetime import datetime
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

_loggers: Dict[str, logging.Logger] = {}


def _has_handler(root: logging.Logger, kind: type) -> bool:
    # FileHandler hereda de StreamHandler: se compara el tipo exacto
    return any(type(h) is kind for h in root.handlers)


def _run_log_file(log_dir: str) -> Path:
    folder = Path(log_dir).expanduser()
    folder.mkdir(parents=True, exist_ok=True)
    return folder / f"cqlab_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"


def setup_logging(
    log_dir: Optional[str] = None,
    level: int = logging.INFO,
    console_output: bool = True,
) -> logging.Logger:
    """
    Configura el logger raíz

    Se puede llamar de nuevo con log_dir una vez leída la configuración:
    solo se añaden los handlers que falten.

    Args:
        log_dir: Directorio del archivo de log (None: solo consola)
        level: Nivel de logging
        console_output: Si mostrar logs en stderr

    Returns:
        Logger principal "CQLab"
    """
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    root = logging.getLogger()
    root.setLevel(level)

    log_file = None
    if log_dir and not _has_handler(root, logging.FileHandler):
        log_file = _run_log_file(log_dir)
        handler = logging.FileHandler(log_file, encoding="utf-8")
        handler.setFormatter(formatter)
        root.addHandler(handler)

    if console_output and not _has_handler(root, logging.StreamHandler):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(formatter)
        root.addHandler(handler)

    main_logger = get_logger("CQLab")
    if log_file is not None:
        main_logger.info(f"Log de la ejecución en {log_file}")
    return main_logger


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """Logger con nombre, registrado para que set_log_level lo alcance"""
    logger = _loggers.get(name)
    if logger is None:
        logger = logging.getLogger(name)
        _loggers[name] = logger
    if level is not None:
        logger.setLevel(level)
    return logger


def set_log_level(level: int):
    """Aplica el nivel al logger raíz y a todos los registrados"""
    logging.getLogger().setLevel(level)
    for logger in _loggers.values():
        logger.setLevel(level)


def log_execution_time(logger: logging.Logger) -> Callable:
    """
    Decorador que registra la duración de un comando o cálculo

    Args:
        logger: Logger a utilizar
    """

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                elapsed = time.perf_counter() - start
                logger.info(f"{func.__name__} terminó en {elapsed:.3f}s")

        return wrapper

    return decorator
