"""
Utilitaires pour le module mkdv_lab.
"""

from .retry import retry_on_exception
from .metrics import MetricsCollector, StageMetric, RunMetrics

__all__ = [
    'retry_on_exception',
    'MetricsCollector',
    'StageMetric',
    'RunMetrics',
]
