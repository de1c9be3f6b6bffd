"""
Suivi des étapes d'un run (données initiales, intégration, modulation, fonctionnelles).

Chaque étape garde sa durée, son statut et des compteurs propres au calcul:
pas de temps et instantanés pour l'intégration, itérations de Newton pour la
modulation, lignes produites pour les fonctionnelles. Le résumé est écrit dans
``summary.json`` sous la clé ``stages``.
"""

import time
import threading
from typing import Any, Callable, Dict, List, Optional
from dataclasses import dataclass, field
import logging

logger = logging.getLogger(__name__)

Counters = Dict[str, float]


@dataclass
class StageMetric:
    """Durée, statut et compteurs d'une étape du pipeline."""
    stage_name: str
    start_time: float
    end_time: Optional[float] = None
    success: bool = True
    error_message: Optional[str] = None
    counters: Counters = field(default_factory=dict)

    @property
    def duration(self) -> Optional[float]:
        if self.end_time is not None:
            return self.end_time - self.start_time
        return None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "stage": self.stage_name,
            "duration_s": self.duration,
            "success": self.success,
            "error": self.error_message,
            "counters": dict(self.counters),
        }


@dataclass
class RunMetrics:
    """Étapes d'un run et compteurs cumulés sur toutes les étapes."""
    run_name: str
    stages: List[StageMetric] = field(default_factory=list)
    totals: Counters = field(default_factory=dict)

    def add_stage(self, metric: StageMetric):
        self.stages.append(metric)
        for name, value in metric.counters.items():
            self.totals[name] = self.totals.get(name, 0.0) + value

    @property
    def failed(self) -> List[str]:
        return [m.stage_name for m in self.stages if not m.success]

    @property
    def total_duration(self) -> float:
        return sum(m.duration for m in self.stages if m.duration is not None)


class MetricsCollector:
    """Collecteur thread-safe (les balayages exécutent plusieurs runs en parallèle)."""

    def __init__(self, run_name: str):
        self.run_name = run_name
        self.metrics = RunMetrics(run_name)
        self._lock = threading.Lock()

    def run_stage(self, stage_name: str, func: Callable, *args,
                  counters: Optional[Callable[[Any], Counters]] = None, **kwargs):
        """
        Exécute une étape et enregistre sa durée.

        Args:
            stage_name: Nom de l'étape
            func: Fonction à exécuter
            counters: Fonction résultat -> compteurs (par exemple nombre de pas)
            *args, **kwargs: Arguments pour la fonction

        Returns:
            Le résultat de ``func``; une exception est enregistrée puis relancée
        """
        metric = StageMetric(stage_name=stage_name, start_time=time.perf_counter())
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            self._finish(metric, success=False, error_message=str(e))
            raise
        if counters is not None:
            metric.counters.update(counters(result))
        self._finish(metric)
        return result

    def _finish(self, metric: StageMetric, success: bool = True,
                error_message: Optional[str] = None):
        metric.end_time = time.perf_counter()
        metric.success = success
        metric.error_message = error_message
        with self._lock:
            self.metrics.add_stage(metric)
        status = "ok" if success else "FAILED"
        logger.debug(f"Stage {metric.stage_name} {status} in {metric.duration:.3f}s {metric.counters}")

    def count(self, name: str, value: float = 1.0):
        """Ajoute ``value`` à un compteur du run hors étape (ex: divisions de dt)."""
        with self._lock:
            self.metrics.totals[name] = self.metrics.totals.get(name, 0.0) + value

    def summary(self) -> Dict[str, Any]:
        with self._lock:
            return {
                "run_name": self.metrics.run_name,
                "stages": [m.as_dict() for m in self.metrics.stages],
                "failed_stages": self.metrics.failed,
                "counters": dict(self.metrics.totals),
                "total_duration_s": self.metrics.total_duration,
            }
