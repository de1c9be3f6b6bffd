"""
Configuration pour le module mkdv_lab.
"""

from .validator import (
    GridConfig,
    SolverConfig,
    CutoffSettings,
    PerturbationConfig,
    PerturbationKind,
    AcceptanceConfig,
    Scenario,
    SchemeName,
    LogLevel,
)

from .loader import (
    ScenarioLoader,
    build_scenario,
    load_scenario,
    load_settings_from_env,
    worker_count,
)

__all__ = [
    'GridConfig',
    'SolverConfig',
    'CutoffSettings',
    'PerturbationConfig',
    'PerturbationKind',
    'AcceptanceConfig',
    'Scenario',
    'SchemeName',
    'LogLevel',
    'ScenarioLoader',
    'build_scenario',
    'load_scenario',
    'load_settings_from_env',
    'worker_count',
]
