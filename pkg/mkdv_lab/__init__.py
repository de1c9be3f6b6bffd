"""
Module mkdv_lab - Laboratoire numérique pour la stabilité orbitale des sommes
de solitons et de breathers de l'équation mKdV.
"""

from .utils.logger import setup_logger, global_logger
from .spectral import Grid, Field
from .solutions import SolitonParams, BreatherParams, Configuration, eval_sum
from .functionals import conserved_triple, localized_triple, lyapunov, functional_report
from .config import Scenario, SolverConfig, LogLevel, load_scenario
from .base import BaseScheme
from .registry import registry, register_scheme, create_scheme, list_available_schemes
from .exceptions import (
    LabError,
    ConfigurationError,
    ParameterError,
    IntegrationError,
    ModulationError,
    RetryExhaustedError,
)


# Import automatique des schémas pour les enregistrer
def _load_schemes():
    """Charge les schémas en temps disponibles."""
    logger = global_logger

    try:
        from .integrator import schemes

        logger.debug(f"Time schemes loaded: {list_available_schemes()}")
    except ImportError as e:
        logger.debug(f"Time schemes not available: {e}")


_load_schemes()

from .integrator import integrate, Trajectory
from .modulation import fit, track
from .harness import run, sweep, run_identity_suite

__version__ = "0.1.0"

__all__ = [
    # Substrat numérique
    "Grid",
    "Field",
    # Solutions exactes
    "SolitonParams",
    "BreatherParams",
    "Configuration",
    "eval_sum",
    # Fonctionnelles
    "conserved_triple",
    "localized_triple",
    "lyapunov",
    "functional_report",
    # Configuration
    "Scenario",
    "SolverConfig",
    "LogLevel",
    "load_scenario",
    # Schémas et registre
    "BaseScheme",
    "registry",
    "register_scheme",
    "create_scheme",
    "list_available_schemes",
    "integrate",
    "Trajectory",
    # Modulation et banc d'essai
    "fit",
    "track",
    "run",
    "sweep",
    "run_identity_suite",
    # Exceptions
    "LabError",
    "ConfigurationError",
    "ParameterError",
    "IntegrationError",
    "ModulationError",
    "RetryExhaustedError",
    # Logging
    "setup_logger",
]
