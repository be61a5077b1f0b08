#!/usr/bin/env python
# -*- coding: utf-8 -*-

from typing import Any, Callable, Hashable

from workers.base_worker import BaseWorker


class CellWorker(BaseWorker):
    """Evalúa una celda independiente (lambda, t) de un comando"""

    def __init__(self, key: Hashable, task: Callable[[], Any], index: int = 0):
        super().__init__(index)
        self.key = key
        self.task = task

    def _execute(self) -> Any:
        self.logger.debug(f"Evaluando celda {self.key}")
        return self.task()
