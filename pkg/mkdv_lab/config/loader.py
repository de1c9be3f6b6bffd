"""
Chargement des scénarios JSON et des réglages d'environnement.
"""

import json
import logging
import os
from typing import Any, Dict, Optional

from pydantic import ValidationError

from .validator import Scenario
from ..exceptions import ConfigurationError

# Charger les variables d'environnement depuis .env si disponible
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv n'est pas installé, pas grave

logger = logging.getLogger(__name__)

ENV_THREADS = "MKDV_LAB_THREADS"
ENV_LOG_LEVEL = "MKDV_LAB_LOG_LEVEL"
ENV_OUTPUT_DIR = "MKDV_LAB_OUTPUT_DIR"


class ScenarioLoader:
    """Lecture d'un fichier de scénario JSON versionné."""

    def __init__(self, path: str):
        """
        Args:
            path: Chemin du fichier JSON
        """
        self.path = path

    def read_raw(self) -> Dict[str, Any]:
        """
        Retourne le contenu brut du fichier.

        Raises:
            ConfigurationError: Si le fichier est absent ou n'est pas du JSON valide
        """
        if not os.path.exists(self.path):
            raise ConfigurationError(f"Scenario file not found: {self.path}")
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Invalid JSON in {self.path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"Scenario {self.path} must be a JSON object")
        return data

    def load(self, overrides: Optional[Dict[str, Any]] = None) -> Scenario:
        data = self.read_raw()
        data.setdefault("name", os.path.splitext(os.path.basename(self.path))[0])
        return build_scenario(data, overrides)


def _apply_overrides(data: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    data = json.loads(json.dumps(data))
    grid = data.setdefault("grid", {})
    solver = data.setdefault("solver", {})
    perturbation = data.setdefault("perturbation", {})

    if overrides.get("points") is not None:
        grid["points"] = int(overrides["points"])
    if overrides.get("length") is not None:
        grid["length"] = float(overrides["length"])
    if overrides.get("seed") is not None:
        perturbation["seed"] = int(overrides["seed"])
    if overrides.get("out") is not None:
        data["outputs"] = str(overrides["out"])
    if overrides.get("dt") is not None:
        new_dt = float(overrides["dt"])
        old_dt = float(solver.get("dt", 1e-3))
        old_stride = int(solver.get("snapshot_stride", 100))
        # mêmes instants de sauvegarde avec le nouveau pas
        solver["snapshot_stride"] = max(1, int(round(old_stride * old_dt / new_dt)))
        solver["dt"] = new_dt
    return data


def build_scenario(data: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None) -> Scenario:
    """
    Valide un dictionnaire de scénario après application des surcharges CLI.

    Raises:
        ConfigurationError: Si le scénario est invalide
    """
    if overrides:
        data = _apply_overrides(data, overrides)
    try:
        scenario = Scenario.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid scenario: {e}") from e
    logger.debug(f"Loaded scenario '{scenario.name}' with {len(scenario.objects.objects)} objects")
    return scenario


def load_scenario(path: str, overrides: Optional[Dict[str, Any]] = None) -> Scenario:
    """Charge et valide un scénario JSON."""
    return ScenarioLoader(path).load(overrides)


def load_settings_from_env() -> Dict[str, Any]:
    """
    Réglages lus dans l'environnement (après chargement de .env).

    Returns:
        Dictionnaire avec les clés ``threads``, ``log_level`` et ``output_dir``
        (absentes si la variable n'est pas définie)
    """
    settings: Dict[str, Any] = {}
    threads = os.getenv(ENV_THREADS)
    if threads:
        try:
            settings["threads"] = int(threads)
        except ValueError as e:
            raise ConfigurationError(f"{ENV_THREADS} must be an integer, got '{threads}'") from e
        if settings["threads"] < 1:
            raise ConfigurationError(f"{ENV_THREADS} must be >= 1, got {threads}")
    level = os.getenv(ENV_LOG_LEVEL)
    if level:
        settings["log_level"] = level.upper()
    output_dir = os.getenv(ENV_OUTPUT_DIR)
    if output_dir:
        settings["output_dir"] = output_dir
    return settings


def worker_count(requested: Optional[int] = None) -> int:
    """Taille du pool: min(demandé, MKDV_LAB_THREADS, nombre de CPU)."""
    cap = os.cpu_count() or 1
    env_threads = load_settings_from_env().get("threads")
    if env_threads is not None:
        cap = min(cap, env_threads)
    if requested is not None:
        cap = min(cap, max(1, requested))
    return max(1, cap)
