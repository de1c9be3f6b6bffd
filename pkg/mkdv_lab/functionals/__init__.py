"""
Lois de conservation, troncatures mobiles et fonctionnelles localisées.
"""

from .conservation import Triple, localized_densities, mass, energy, f_second, conserved_triple
from .cutoff import (
    cutoff_psi,
    cutoff_psi_complement,
    cutoff_psi_derivative,
    MidpointPath,
    WeightProfile,
    CutoffConfig,
    cutoff_from_centers,
    cutoff_from_configuration,
    default_sigma,
    default_theta,
    check_sigma_bound,
    PSI_THIRD_ORDER_ZONE,
)
from .localized import (
    localized_triple,
    lyapunov,
    lyapunov_combination,
    TaylorParts,
    taylor_parts,
    appendix_rhs,
    FunctionalReport,
    functional_report,
)

__all__ = [
    'Triple',
    'localized_densities',
    'mass',
    'energy',
    'f_second',
    'conserved_triple',
    'cutoff_psi',
    'cutoff_psi_complement',
    'cutoff_psi_derivative',
    'MidpointPath',
    'WeightProfile',
    'CutoffConfig',
    'cutoff_from_centers',
    'cutoff_from_configuration',
    'default_sigma',
    'default_theta',
    'check_sigma_bound',
    'PSI_THIRD_ORDER_ZONE',
    'localized_triple',
    'lyapunov',
    'lyapunov_combination',
    'TaylorParts',
    'taylor_parts',
    'appendix_rhs',
    'FunctionalReport',
    'functional_report',
]
