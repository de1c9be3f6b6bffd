"""
Exceptions pour le module mkdv_lab.
"""

from .lab_exceptions import (
    LabError,
    ConfigurationError,
    ParameterError,
    NonFiniteFieldError,
    IntegrationError,
    ModulationError,
    ObjectSwapError,
    DegenerateJacobianError,
    NormalizationError,
    RetryExhaustedError,
    AcceptanceError,
    TailOverflowWarning,
)

__all__ = [
    'LabError',
    'ConfigurationError',
    'ParameterError',
    'NonFiniteFieldError',
    'IntegrationError',
    'ModulationError',
    'ObjectSwapError',
    'DegenerateJacobianError',
    'NormalizationError',
    'RetryExhaustedError',
    'AcceptanceError',
    'TailOverflowWarning',
]
