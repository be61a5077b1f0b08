#!/usr/bin/env python
# -*- coding: utf-8 -*-

from models.system_models import UsageLevel
from services.system_monitor import SystemMonitor


def test_start_stop_report():
    monitor = SystemMonitor()
    monitor.start("bs")
    report = monitor.stop()
    assert report.command == "bs"
    assert report.wall_time >= 0.0
    assert report.peak_rss_mb > 0.0
    assert isinstance(report.level, UsageLevel)
    data = report.to_dict()
    assert set(data) == {
        "command",
        "wall_time_s",
        "peak_rss_mb",
        "cpu_percent",
        "cpu_count",
        "physical_cores",
        "level",
    }


def test_stop_without_start():
    assert SystemMonitor().stop() is None


def test_thresholds_control_level():
    monitor = SystemMonitor()
    monitor.warning_thresholds.update({"memory_warning": 0.0, "memory_critical": 101.0})
    monitor.start("info")
    assert monitor.stop().level is UsageLevel.WARNING


def test_default_thread_count():
    assert SystemMonitor.default_thread_count() >= 1
