#!/usr/bin/env python
# -*- coding: utf-8 -*-

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from utils.constants import CSV_SIGNIFICANT_DIGITS
from utils.logger import get_logger

_logger = get_logger("FileUtils")


def format_value(value: Any) -> str:
    """Formatea un valor de celda: flotantes con 17 cifras significativas"""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"%.{CSV_SIGNIFICANT_DIGITS}g" % float(value)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(np.real(value)), float(np.imag(value))]
    return value


class FileUtils:
    """Utilidades para escribir artefactos de resultados"""

    @staticmethod
    def ensure_directory(directory: str) -> bool:
        """
        Asegura que un directorio existe

        Args:
            directory: Ruta del directorio

        Returns:
            True si el directorio existe o fue creado
        """
        try:
            directory = os.path.expanduser(directory)
            Path(directory).mkdir(parents=True, exist_ok=True)
            return True
        except OSError as e:
            _logger.error(f"Error creando directorio {directory}: {str(e)}")
            return False

    @staticmethod
    def safe_write(file_path: str, content: str) -> bool:
        """
        Escribe contenido en un archivo de forma atómica

        Args:
            file_path: Ruta del archivo
            content: Contenido a escribir

        Returns:
            True si la escritura fue exitosa
        """
        temp_path = None
        try:
            file_path = os.path.expanduser(str(file_path))
            directory = os.path.dirname(file_path)
            if directory:
                FileUtils.ensure_directory(directory)

            # Escribir archivo temporal y reemplazar
            temp_path = f"{file_path}.tmp"
            with open(temp_path, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
            os.replace(temp_path, file_path)
            return True

        except OSError as e:
            _logger.error(f"Error escribiendo archivo {file_path}: {str(e)}")
            if temp_path and os.path.exists(temp_path):
                try:
                    os.remove(temp_path)
                except OSError:
                    pass
            return False

    @staticmethod
    def safe_read(file_path: str) -> Optional[str]:
        """Lee un archivo; None en caso de error"""
        try:
            with open(os.path.expanduser(str(file_path)), "r", encoding="utf-8") as f:
                return f.read()
        except OSError as e:
            _logger.error(f"Error leyendo archivo {file_path}: {str(e)}")
            return None

    @staticmethod
    def dumps_json(data: Any) -> str:
        """JSON canónico: claves ordenadas, sangría 2, salto de línea final"""
        return json.dumps(_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def read_json(file_path: str) -> Optional[Dict[str, Any]]:
        content = FileUtils.safe_read(file_path)
        if content is None:
            return None
        try:
            return json.loads(content)
        except json.JSONDecodeError as e:
            _logger.error(f"Error decodificando JSON {file_path}: {str(e)}")
            return None

    @staticmethod
    def write_json(file_path: str, data: Any) -> bool:
        return FileUtils.safe_write(file_path, FileUtils.dumps_json(data))

    @staticmethod
    def render_csv(header: Dict[str, Any], columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        """
        Texto CSV con comentarios de cabecera

        Args:
            header: Pares clave=valor escritos como líneas '# clave=valor'
            columns: Nombres de columna
            rows: Filas de valores
        """
        lines: List[str] = [f"# {key}={value}" for key, value in header.items()]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(format_value(v) for v in row))
        return "\n".join(lines) + "\n"

    @staticmethod
    def write_csv(
        file_path: str, header: Dict[str, Any], columns: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> bool:
        return FileUtils.safe_write(file_path, FileUtils.render_csv(header, columns, rows))

    @staticmethod
    def get_file_hash(file_path: str, algorithm: str = "sha256") -> Optional[str]:
        """
        Calcula el hash de un archivo

        Args:
            file_path: Ruta del archivo
            algorithm: Algoritmo de hash (sha256, md5, etc.)

        Returns:
            Hash del archivo o None en caso de error
        """
        try:
            hash_func = hashlib.new(algorithm)
            with open(os.path.expanduser(str(file_path)), "rb") as f:
                for chunk in iter(lambda: f.read(4096), b""):
                    hash_func.update(chunk)
            return hash_func.hexdigest()
        except OSError as e:
            _logger.error(f"Error calculando hash de {file_path}: {str(e)}")
            return None
