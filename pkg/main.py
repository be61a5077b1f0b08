#!/usr/bin/env python
# -*- coding: utf-8 -*-

import argparse
import logging
import sys
import traceback
from pathlib import Path
from typing import List, Optional

# Agregar el directorio actual al path para imports
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))

from utils.constants import APP_NAME, APP_VERSION, COMMANDS  # noqa: E402


def build_parser() -> argparse.ArgumentParser:
    """Parser de la línea de comandos"""
    parser = argparse.ArgumentParser(
        prog="cqlab",
        description=f"{APP_NAME} v{APP_VERSION}: cuantización geométrica en T*K con semiformas",
    )
    parser.add_argument("command", choices=COMMANDS, help="Subcomando a ejecutar")
    parser.add_argument("--config", metavar="PATH", help="Archivo INI de configuración")
    parser.add_argument("--out", metavar="DIR", help="Directorio de salida de artefactos")
    parser.add_argument("--seed", type=int, help="Semilla del generador aleatorio")
    parser.add_argument("--threads", type=int, help="Número de hilos (0 = núcleos físicos)")
    return parser


def print_result(result) -> None:
    """Resumen legible en stdout"""
    for line in result.lines:
        print(line)
    for check in result.checks:
        mark = "✅" if check.passed else "❌"
        print(f"{mark} {check.name}: {check.value:.6g} (umbral {check.threshold:.6g})")
    if result.artifact is not None:
        print(f"📁 {result.artifact}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada de la CLI

    Returns:
        0 ok, 1 verificación fallida, 2 error de configuración,
        3 funcionalidad no soportada
    """
    args = build_parser().parse_args(argv)

    from core.errors import EXIT_OK, EXIT_TOLERANCE, LabError
    from utils.logger import setup_logging, set_log_level

    logger = setup_logging(log_dir=None)

    try:
        from core.config_manager import ConfigManager
        from core.dependency_checker import DependencyChecker

        DependencyChecker().check_all_dependencies()

        manager = ConfigManager(args.config)
        run = manager.to_run_config(
            {"output_dir": args.out, "seed": args.seed, "threads": args.threads}
        )
        set_log_level(getattr(logging, run.general.log_level))
        if run.paths.log_dir:
            setup_logging(log_dir=run.paths.log_dir, level=getattr(logging, run.general.log_level))

        from core.application import LabApplication

        application = LabApplication(run)
        result = application.run(args.command)
        print_result(result)
        application.verify(result)

        logger.info(f"Comando '{args.command}' completado")
        return EXIT_OK

    except LabError as e:
        detail = f" ({e.detail})" if e.detail else ""
        logger.error(f"{e.__class__.__name__}: {e}{detail}")
        print(f"❌ {e}{detail}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.critical(f"Error inesperado: {e}")
        traceback.print_exc()
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
