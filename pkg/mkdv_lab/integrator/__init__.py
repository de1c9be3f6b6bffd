"""
Solveur pseudo-spectral de mKdV et sérialisation des trajectoires.
"""

from .schemes import ETDRK4Scheme, IFRK4Scheme
from .solver import (
    step,
    integrate,
    Trajectory,
    check_stability,
    stability_number,
    self_convergence,
    ConvergenceResult,
)
from .snapshots import write_snapshots, read_snapshots

__all__ = [
    'ETDRK4Scheme',
    'IFRK4Scheme',
    'step',
    'integrate',
    'Trajectory',
    'check_stability',
    'stability_number',
    'self_convergence',
    'ConvergenceResult',
    'write_snapshots',
    'read_snapshots',
]
