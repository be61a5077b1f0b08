#!/usr/bin/env python
# -*- coding: utf-8 -*-

import threading
from typing import Any, Callable, Dict, Hashable, List, Sequence, Tuple

from PySide6.QtCore import QObject, QThreadPool, Qt

from utils.logger import get_logger
from workers.cell_worker import CellWorker


class ThreadManager(QObject):
    """Reparte celdas independientes en un QThreadPool"""

    def __init__(self, max_threads: int = 1):
        super().__init__()
        self.logger = get_logger("ThreadManager")
        self.pool = QThreadPool()
        self.pool.setMaxThreadCount(max(1, int(max_threads)))
        self._workers: List[CellWorker] = []
        self._lock = threading.Lock()
        self._failures: Dict[int, str] = {}
        self.completed = 0

        self.logger.debug(f"ThreadManager inicializado con {self.pool.maxThreadCount()} hilos")

    @property
    def max_threads(self) -> int:
        return self.pool.maxThreadCount()

    def run_cells(self, cells: Sequence[Tuple[Hashable, Callable[[], Any]]]) -> List[Any]:
        """
        Ejecuta las celdas y devuelve sus resultados en orden de envío

        Tras el primer fallo se cancelan las celdas que no han empezado.

        Raises:
            La excepción de la primera celda fallida en orden de envío
        """
        self._failures = {}
        self.completed = 0
        self._workers = [CellWorker(key, task, index) for index, (key, task) in enumerate(cells)]
        for worker in self._workers:
            # las señales llegan desde los hilos del pool
            worker.signals.error_occurred.connect(self._on_worker_error, Qt.ConnectionType.DirectConnection)
            worker.signals.finished.connect(self._on_worker_finished, Qt.ConnectionType.DirectConnection)

        if self.max_threads == 1:
            for worker in self._workers:
                worker.run()
        else:
            for worker in self._workers:
                self.pool.start(worker)
            self.pool.waitForDone()

        if self._failures:
            first = self._workers[min(self._failures)]
            self.logger.error(f"Celda {first.key} falló: {self._failures[first.index]}")
            raise first.exception
        results = [worker.result for worker in self._workers]
        self.logger.debug(f"{len(results)} celdas completadas")
        return results

    def _on_worker_error(self, index: int, message: str):
        with self._lock:
            self._failures[index] = message
        self.stop_all_workers()

    def _on_worker_finished(self, index: int):
        with self._lock:
            self.completed += 1
            done = self.completed
        self.logger.debug(f"Celda {index} terminada ({done}/{len(self._workers)})")

    def stop_all_workers(self):
        """Cancela las celdas que aún no han empezado"""
        for worker in self._workers:
            worker.stop()
        self.pool.clear()
