"""
Solutions exactes de mKdV: solitons, breathers et sommes d'objets.
"""

from .params import SolitonParams, BreatherParams, ObjectParams, Configuration
from .soliton import (
    soliton_profile,
    soliton_profile_derivative,
    soliton_profile_dc,
    eval_soliton,
    sech,
)
from .breather import (
    eval_breather,
    breather_values,
    breather_arctan,
    breather_slope_values,
    breather_phases,
    arctan_derivatives,
    breather_envelope_constant,
)
from .objects import (
    velocity,
    center,
    decay_rate,
    envelope_constant,
    lyapunov_parameters,
    eval_object,
    object_slope,
    eval_sum,
    param_gradient,
    modulated_values,
    with_modulated_values,
    translate,
    elliptic_residual,
    residual_scale,
    RESIDUAL_RELATIVE_TOL,
    SeparationConstants,
    separation_constants,
    initial_separation,
    trajectory_extent,
    required_box_length,
    frame_shift,
)

__all__ = [
    'SolitonParams',
    'BreatherParams',
    'ObjectParams',
    'Configuration',
    'soliton_profile',
    'soliton_profile_derivative',
    'soliton_profile_dc',
    'eval_soliton',
    'sech',
    'eval_breather',
    'breather_values',
    'breather_arctan',
    'breather_slope_values',
    'breather_phases',
    'arctan_derivatives',
    'breather_envelope_constant',
    'velocity',
    'center',
    'decay_rate',
    'envelope_constant',
    'lyapunov_parameters',
    'eval_object',
    'object_slope',
    'eval_sum',
    'param_gradient',
    'modulated_values',
    'with_modulated_values',
    'translate',
    'elliptic_residual',
    'residual_scale',
    'RESIDUAL_RELATIVE_TOL',
    'SeparationConstants',
    'separation_constants',
    'initial_separation',
    'trajectory_extent',
    'required_box_length',
    'frame_shift',
]
