"""
Banc d'essai: scénarios, balayages et suite d'identités.
"""

from .initial import build_initial, perturbation_values, random_h2, directed_bump
from .runner import (
    StabilityReport,
    run,
    resolve_grid,
    calibrate_solver,
    series_columns,
    param_names,
    separation_growth,
    tail_leaks,
    write_report,
)
from .sweep import SweepAxis, SweepResult, sweep, variant, write_sweep
from .verify import VerifyCheck, run_identity_suite, format_checks

__all__ = [
    'build_initial',
    'perturbation_values',
    'random_h2',
    'directed_bump',
    'StabilityReport',
    'run',
    'resolve_grid',
    'calibrate_solver',
    'series_columns',
    'param_names',
    'separation_growth',
    'tail_leaks',
    'write_report',
    'SweepAxis',
    'SweepResult',
    'sweep',
    'variant',
    'write_sweep',
    'VerifyCheck',
    'run_identity_suite',
    'format_checks',
]
