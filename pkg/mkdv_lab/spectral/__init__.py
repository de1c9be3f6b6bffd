"""
Substrat numérique: grille périodique, dérivées spectrales, quadrature, normes.
"""

from .grid import Grid, Field, DEFAULT_LENGTH, DEFAULT_POINTS
from .operators import (
    spectral_derivative,
    derivative_array,
    derivative_stack,
    derivative_multiplier,
    quadrature,
    integrate,
    inner,
    h2_norm_sq,
    h2_norm,
    weighted_h2_sq,
    spectral_tail,
)

__all__ = [
    'Grid',
    'Field',
    'DEFAULT_LENGTH',
    'DEFAULT_POINTS',
    'spectral_derivative',
    'derivative_array',
    'derivative_stack',
    'derivative_multiplier',
    'quadrature',
    'integrate',
    'inner',
    'h2_norm_sq',
    'h2_norm',
    'weighted_h2_sq',
    'spectral_tail',
]
