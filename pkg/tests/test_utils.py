"""
Tests pour le logger, les métriques et le retry.
"""

import logging

import pytest

from mkdv_lab.exceptions import IntegrationError, RetryExhaustedError
from mkdv_lab.utils import MetricsCollector, retry_on_exception
from mkdv_lab.config import LogLevel
from mkdv_lab.utils.logger import get_level_from_config, run_logger, setup_logger


class TestRetry:
    """Tests pour retry_on_exception."""

    def test_success_on_second_attempt(self):
        """Test d'une seconde tentative réussie avec l'indice transmis."""
        seen = []

        @retry_on_exception(max_attempts=3, exceptions=IntegrationError)
        def refine(dt, attempt=0):
            seen.append(attempt)
            if attempt == 0:
                raise IntegrationError("unstable")
            return dt / 2 ** attempt

        assert refine(1e-3) == pytest.approx(5e-4)
        assert seen == [0, 1]

    def test_exhausted(self):
        """Test de l'épuisement des tentatives."""
        @retry_on_exception(max_attempts=2, exceptions=IntegrationError)
        def always(attempt=0):
            raise IntegrationError(f"attempt {attempt}")

        with pytest.raises(RetryExhaustedError):
            always()

    def test_other_exceptions_propagate(self):
        """Test d'une exception hors de la liste."""
        @retry_on_exception(max_attempts=3, exceptions=IntegrationError)
        def broken(attempt=0):
            raise KeyError("missing")

        with pytest.raises(KeyError):
            broken()


class TestMetrics:
    """Tests pour MetricsCollector."""

    def test_run_stage(self):
        """Test de la collecte d'une étape réussie puis d'une étape en échec."""
        collector = MetricsCollector("run")

        def boom():
            raise ValueError("boom")

        assert collector.run_stage("integrate", lambda x: x * 2, 21) == 42
        with pytest.raises(ValueError):
            collector.run_stage("modulate", boom)

        summary = collector.summary()
        assert summary["run_name"] == "run"
        assert [s["stage"] for s in summary["stages"]] == ["integrate", "modulate"]
        assert summary["stages"][1]["error"] == "boom"
        assert summary["failed_stages"] == ["modulate"]
        assert summary["total_duration_s"] >= 0.0

    def test_counters(self):
        """Test des compteurs par étape et des totaux du run."""
        collector = MetricsCollector("run")
        collector.run_stage("integrate", lambda n: list(range(n)), 5,
                            counters=lambda out: {"steps": len(out), "snapshots": 2})
        collector.run_stage("modulate", lambda: 3, counters=lambda it: {"newton_iterations": it})
        collector.count("dt_halvings", 2)
        summary = collector.summary()
        assert summary["stages"][0]["counters"] == {"steps": 5, "snapshots": 2}
        assert summary["counters"] == {"steps": 5, "snapshots": 2, "newton_iterations": 3,
                                       "dt_halvings": 2}

    def test_failed_stage_has_no_counters(self):
        """Test: une étape en échec n'appelle pas la fonction de comptage."""
        collector = MetricsCollector("run")

        def boom():
            raise ValueError("boom")

        with pytest.raises(ValueError):
            collector.run_stage("integrate", boom, counters=lambda out: {"steps": 1})
        assert collector.summary()["counters"] == {}


class TestLogger:
    """Tests pour setup_logger."""

    def test_file_output(self, tmp_path):
        """Test de l'écriture du journal dans un répertoire donné."""
        logger = setup_logger(name="mkdv_lab.test", level=logging.DEBUG,
                              log_dir=str(tmp_path), console_output=False)
        logger.debug("hello")
        for handler in logger.handlers:
            handler.flush()
        assert "hello" in (tmp_path / "mkdv_lab.log").read_text()

    def test_config_overrides(self):
        """Test de la configuration par dictionnaire."""
        logger = setup_logger(name="mkdv_lab.test_config", config={
            "log_level": "ERROR", "file_output": False})
        assert logger.level == logging.ERROR
        assert logger.handlers and all(not isinstance(h, logging.FileHandler) for h in logger.handlers)

    def test_run_logger(self, tmp_path):
        """Test du journal d'exécution et de la redirection des avertissements."""
        try:
            logger = run_logger(str(tmp_path), "DEBUG")
            assert logger.name == "mkdv_lab"
            assert logger.level == logging.DEBUG
            assert (tmp_path / "mkdv_lab.log").exists()
            assert logging.getLogger("py.warnings").handlers
        finally:
            run_logger(None, logging.WARNING)
            logging.captureWarnings(False)

    @pytest.mark.parametrize("text,level", [
        ("debug", logging.DEBUG),
        ("WARNING", logging.WARNING),
        ("verbose", logging.INFO),
        (LogLevel.ERROR, logging.ERROR),
        (None, logging.INFO),
    ])
    def test_level_from_config(self, text, level):
        """Test de la conversion des niveaux."""
        assert get_level_from_config(text) == level
