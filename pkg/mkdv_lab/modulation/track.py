"""
Suivi des paramètres modulés le long d'une trajectoire.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .fit import DEFAULT_MAX_ITER, DEFAULT_TOLERANCE, ModulationResult, fit
from ..exceptions import LabError
from ..integrator import Trajectory
from ..solutions import Configuration, center, modulated_values

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModulationTrack:
    """
    Résultats d'ajustement ordonnés en temps et dérivées des paramètres.

    ``parameter_rates`` a la forme (n_instants, 2 J): différences centrées
    (décentrées aux extrémités) des paramètres modulés.
    """

    results: Tuple[ModulationResult, ...]
    parameter_rates: np.ndarray
    truncated_at: Optional[float] = None
    failure: Optional[str] = None

    @property
    def times(self) -> np.ndarray:
        return np.array([r.time for r in self.results])

    @property
    def truncated(self) -> bool:
        return self.truncated_at is not None

    def parameters(self) -> np.ndarray:
        """Paramètres modulés (n_instants, 2 J) dans l'ordre de la configuration."""
        return parameter_matrix(self.results)

    def centers(self) -> np.ndarray:
        """Centres ajustés (n_instants, J)."""
        return np.array([[center(o, r.time) for o in r.params.objects] for r in self.results])

    @property
    def guard_bound(self) -> bool:
        return any(r.guard_bound for r in self.results)


def parameter_matrix(results) -> np.ndarray:
    rows = [[v for o in r.params.objects for v in modulated_values(o)] for r in results]
    return np.array(rows, dtype=float)


def parameter_rates(times: np.ndarray, params: np.ndarray) -> np.ndarray:
    if params.shape[0] < 2:
        return np.zeros_like(params)
    return np.gradient(params, times, axis=0)


def track(traj: Trajectory, initial_guess: Configuration, tol: float = DEFAULT_TOLERANCE,
          max_iter: int = DEFAULT_MAX_ITER) -> ModulationTrack:
    """
    Ajuste chaque instantané en partant du résultat précédent.

    Un échec d'ajustement (exception du laboratoire ou non-convergence) tronque
    le suivi à l'instant concerné.
    """
    if not initial_guess.objects:
        return ModulationTrack((), np.zeros((0, 0)))

    results = []
    guess = initial_guess
    truncated_at, failure = None, None
    for snap in traj.snapshots:
        try:
            result = fit(snap, guess, tol=tol, max_iter=max_iter)
        except LabError as e:
            truncated_at, failure = snap.time, f"{type(e).__name__}: {e}"
            logger.error(f"Modulation failed at t={snap.time}: {e}")
            break
        if not result.converged:
            truncated_at = snap.time
            failure = f"not converged (|G|={np.max(np.abs(result.ortho_residuals)):.3e})"
            logger.error(f"Modulation did not converge at t={snap.time}")
            break
        results.append(result)
        guess = result.params

    if results:
        times = np.array([r.time for r in results])
        rates = parameter_rates(times, parameter_matrix(results))
    else:
        rates = np.zeros((0, 2 * len(initial_guess.objects)))
    logger.info(f"Tracked {len(results)} of {len(traj.snapshots)} snapshots")
    return ModulationTrack(tuple(results), rates, truncated_at, failure)
