#!/usr/bin/env python
# -*- coding: utf-8 -*-

from dataclasses import asdict, dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional


class UsageLevel(Enum):
    """Nivel de uso de memoria del proceso"""

    NORMAL = "normal"
    WARNING = "warning"
    CRITICAL = "critical"


@dataclass
class ResourceSample:
    """Muestra de recursos del proceso en un instante"""

    rss_mb: float
    cpu_percent: float
    wall_seconds: float
    timestamp: datetime = None

    def __post_init__(self):
        if self.timestamp is None:
            self.timestamp = datetime.now()

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["timestamp"] = self.timestamp.isoformat()
        return data


@dataclass
class ResourceReport:
    """Resumen de recursos de un comando"""

    command: str
    start: ResourceSample
    end: Optional[ResourceSample] = None
    cpu_count: int = 0
    physical_cores: int = 0
    level: UsageLevel = field(default=UsageLevel.NORMAL)

    @property
    def wall_time(self) -> float:
        if self.end is None:
            return 0.0
        return self.end.wall_seconds - self.start.wall_seconds

    @property
    def peak_rss_mb(self) -> float:
        return max(self.start.rss_mb, self.end.rss_mb if self.end else 0.0)

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el informe a diccionario (va al resumen JSON, nunca a los CSV)"""
        return {
            "command": self.command,
            "wall_time_s": round(self.wall_time, 3),
            "peak_rss_mb": round(self.peak_rss_mb, 1),
            "cpu_percent": self.end.cpu_percent if self.end else 0.0,
            "cpu_count": self.cpu_count,
            "physical_cores": self.physical_cores,
            "level": self.level.value,
        }
