#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
import time
from typing import Optional

import psutil

from models.system_models import ResourceReport, ResourceSample, UsageLevel
from utils.logger import get_logger


class SystemMonitor:
    """Mide los recursos del proceso al inicio y al final de cada comando"""

    def __init__(self):
        self.logger = get_logger("SystemMonitor")
        self.process = psutil.Process(os.getpid())

        # Umbrales de advertencia (porcentaje de memoria del sistema)
        self.warning_thresholds = {
            "memory_warning": 70.0,
            "memory_critical": 90.0,
        }

        self._report: Optional[ResourceReport] = None

    def _sample(self) -> ResourceSample:
        with self.process.oneshot():
            rss = self.process.memory_info().rss / (1024**2)
            cpu = self.process.cpu_percent(interval=None)
        return ResourceSample(rss_mb=rss, cpu_percent=cpu, wall_seconds=time.perf_counter())

    def start(self, command: str) -> ResourceReport:
        """Toma la muestra inicial de un comando"""
        self.process.cpu_percent(interval=None)
        self._report = ResourceReport(
            command=command,
            start=self._sample(),
            cpu_count=psutil.cpu_count() or 1,
            physical_cores=psutil.cpu_count(logical=False) or 1,
        )
        self.logger.debug(f"Monitor iniciado para '{command}'")
        return self._report

    def stop(self) -> Optional[ResourceReport]:
        """Toma la muestra final y registra el resumen"""
        if self._report is None:
            self.logger.warning("stop() sin start() previo")
            return None
        report = self._report
        report.end = self._sample()
        report.level = self._usage_level()
        message = (
            f"Recursos de '{report.command}': {report.wall_time:.2f}s, "
            f"RSS máx {report.peak_rss_mb:.1f} MB, CPU {report.end.cpu_percent:.0f}%"
        )
        if report.level is UsageLevel.NORMAL:
            self.logger.info(message)
        else:
            self.logger.warning(f"{message} (memoria del sistema: {report.level.value})")
        self._report = None
        return report

    def _usage_level(self) -> UsageLevel:
        percent = psutil.virtual_memory().percent
        if percent >= self.warning_thresholds["memory_critical"]:
            return UsageLevel.CRITICAL
        if percent >= self.warning_thresholds["memory_warning"]:
            return UsageLevel.WARNING
        return UsageLevel.NORMAL

    @staticmethod
    def default_thread_count() -> int:
        """Núcleos físicos disponibles (al menos 1)"""
        return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
