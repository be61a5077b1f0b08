#!/usr/bin/env python
# -*- coding: utf-8 -*-

from typing import Any, Optional

from PySide6.QtCore import QObject, QRunnable, Signal

from utils.logger import get_logger


class WorkerSignals(QObject):
    """Señales de un worker (QRunnable no hereda de QObject)"""

    finished = Signal(int)  # índice del worker
    error_occurred = Signal(int, str)  # índice y mensaje


class BaseWorker(QRunnable):
    """
    Clase base para todos los workers del pool de hilos

    El resultado y la excepción quedan guardados en el worker para que el
    gestor los recoja en orden de envío.
    """

    def __init__(self, index: int = 0):
        super().__init__()
        self.logger = get_logger(self.__class__.__name__)
        self.index = index
        self.signals = WorkerSignals()
        self.setAutoDelete(False)

        self._is_running = False
        self._should_stop = False

        self._result: Optional[Any] = None
        self._error: Optional[str] = None
        self._exception: Optional[BaseException] = None

    def run(self):
        """Método principal del worker"""
        if self._is_running:
            self.logger.warning(f"Worker {self.__class__.__name__} ya está en ejecución")
            return

        try:
            self._is_running = True
            if self._should_stop:
                self.logger.debug(f"Worker {self.index} cancelado antes de empezar")
                return
            self._result = self._execute()

        except Exception as e:
            error_msg = f"Error en worker {self.__class__.__name__}: {str(e)}"
            self.logger.debug(error_msg, exc_info=True)
            self._error = error_msg
            self._exception = e
            self.signals.error_occurred.emit(self.index, error_msg)

        finally:
            self._is_running = False
            self.signals.finished.emit(self.index)

    def _execute(self) -> Any:
        """
        Método abstracto que debe ser implementado por las subclases

        Returns:
            Resultado de la ejecución
        """
        raise NotImplementedError("Las subclases deben implementar _execute()")

    def stop(self):
        """Cancela el worker si aún no ha empezado"""
        self._should_stop = True

    @property
    def stopped(self) -> bool:
        return self._should_stop

    @property
    def result(self) -> Optional[Any]:
        """Retorna el resultado de la ejecución"""
        return self._result

    @property
    def error(self) -> Optional[str]:
        """Retorna el error ocurrido"""
        return self._error

    @property
    def exception(self) -> Optional[BaseException]:
        return self._exception
