"""
Décomposition modulée u = P + eps et suivi des paramètres.
"""

from .fit import (
    ModulationResult,
    fit,
    guard_radii,
    ortho_extended_residuals,
    theorem_distance,
    local_epsilon_weight,
)
from .track import ModulationTrack, track, parameter_matrix, parameter_rates

__all__ = [
    'ModulationResult',
    'fit',
    'guard_radii',
    'ortho_extended_residuals',
    'theorem_distance',
    'local_epsilon_weight',
    'ModulationTrack',
    'track',
    'parameter_matrix',
    'parameter_rates',
]
