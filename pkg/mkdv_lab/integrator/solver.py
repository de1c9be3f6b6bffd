"""
Intégration en temps de u_t + (u_xx + u^3)_x = 0 sur la boîte périodique.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from ..base import BaseScheme
from ..config import SolverConfig
from ..exceptions import ConfigurationError, IntegrationError, NonFiniteFieldError
from ..functionals import Triple, conserved_triple
from ..registry import create_scheme
from ..spectral import Field, Grid, h2_norm

logger = logging.getLogger(__name__)

# Borne de stabilité de RK4 sur l'axe imaginaire.
RK4_IMAGINARY_BOUND = 2.0 * math.sqrt(2.0)


@lru_cache(maxsize=16)
def _scheme_for(grid: Grid, cfg: SolverConfig) -> BaseScheme:
    return create_scheme(grid, cfg)


def stability_number(cfg: SolverConfig, grid: Grid, u: Field) -> float:
    """dt * 3 max|u|^2 * k_coupure: nombre de CFL de la partie non linéaire explicite."""
    k_cut = cfg.dealias * grid.max_wavenumber
    return cfg.dt * 3.0 * u.max_abs() ** 2 * k_cut


def check_stability(cfg: SolverConfig, grid: Grid, u: Field) -> bool:
    """Vrai si le pas reste dans l'enveloppe de stabilité; sinon avertissement."""
    number = stability_number(cfg, grid, u)
    if number > RK4_IMAGINARY_BOUND:
        logger.warning(
            f"dt={cfg.dt} gives nonlinear stability number {number:.3f} > {RK4_IMAGINARY_BOUND:.3f}"
        )
        return False
    return True


def _check_grid(u: Field, grid: Grid):
    if u.grid != grid:
        raise ConfigurationError("Field grid does not match the solver grid")


def step(u: Field, cfg: SolverConfig) -> Field:
    """
    Un pas de temps du schéma configuré.

    Raises:
        NonFiniteFieldError: Si le résultat contient des NaN/Inf
    """
    scheme = _scheme_for(u.grid, cfg)
    values = scheme.to_physical(scheme.advance(scheme.to_spectral(u.values)))
    return Field(u.grid, values, u.time + scheme.step_size)


@dataclass(frozen=True)
class Trajectory:
    """Instantanés à pas régulier et diagnostics de conservation associés."""

    snapshots: Tuple[Field, ...]
    config: SolverConfig
    diagnostics: Tuple[Triple, ...]

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.snapshots])

    @property
    def grid(self) -> Grid:
        return self.snapshots[0].grid

    @property
    def final(self) -> Field:
        return self.snapshots[-1]

    def relative_drift(self) -> Triple:
        """max_t |X(t) - X(0)| / |X(0)| pour X = M, E, F."""
        first = self.diagnostics[0]
        drifts = []
        for k in range(3):
            ref = abs(first[k]) or 1.0
            drifts.append(max(abs(d[k] - first[k]) for d in self.diagnostics) / ref)
        return Triple(*drifts)


def integrate(u0: Field, cfg: SolverConfig) -> Trajectory:
    """
    Intègre ``u0`` sur ``cfg.n_steps`` pas et garde un instantané tous les
    ``snapshot_stride`` pas (instants initial et final inclus).

    Raises:
        IntegrationError: Si un pas produit des NaN/Inf (indice du pas et instant joints)
    """
    grid = u0.grid
    check_stability(cfg, grid, u0)
    scheme = _scheme_for(grid, cfg)
    n_steps = cfg.n_steps
    logger.info(
        f"Integrating {n_steps} steps with {scheme.scheme_name} (dt={cfg.dt}, "
        f"direction={cfg.direction}, points={grid.points})"
    )

    v_hat = scheme.to_spectral(u0.values)
    snapshots = [u0]
    diagnostics = [conserved_triple(u0)]
    for n in range(1, n_steps + 1):
        v_hat = scheme.advance(v_hat)
        t = u0.time + scheme.step_size * n
        if not np.all(np.isfinite(v_hat)):
            logger.error(f"Non-finite state at step {n} (t={t})")
            raise IntegrationError(f"Non-finite state at step {n}, t={t}", step_index=n, time=t)
        if n % cfg.snapshot_stride == 0:
            try:
                field = Field(grid, scheme.to_physical(v_hat), t)
                diagnostics.append(conserved_triple(field))
            except NonFiniteFieldError as e:
                raise IntegrationError(f"Non-finite snapshot at step {n}, t={t}",
                                       step_index=n, time=t) from e
            snapshots.append(field)
            logger.debug(f"Snapshot at step {n}, t={t:.6g}")

    return Trajectory(tuple(snapshots), cfg, tuple(diagnostics))


@dataclass(frozen=True)
class ConvergenceResult:
    """Erreurs à dt et dt/2, et ordre observé log2(e_dt / e_dt/2)."""

    dt: float
    errors: Tuple[float, float]
    order: float


def self_convergence(u0: Field, cfg: SolverConfig,
                     reference_fn: Optional[Callable[[float], Field]] = None) -> ConvergenceResult:
    """
    Ordre observé en divisant le pas par deux.

    Args:
        u0: Donnée initiale
        cfg: Configuration au pas dt (t_final inclus)
        reference_fn: Solution de référence t -> Field; à défaut, un calcul à dt/4

    Returns:
        ConvergenceResult avec les erreurs H2 au temps final
    """
    single = cfg.model_copy(update={"snapshot_stride": cfg.n_steps})
    half = single.model_copy(update={"dt": cfg.dt / 2.0, "snapshot_stride": 2 * cfg.n_steps})
    coarse = integrate(u0, single).final
    fine = integrate(u0, half).final
    if reference_fn is not None:
        reference = reference_fn(coarse.time)
    else:
        quarter = single.model_copy(update={"dt": cfg.dt / 4.0, "snapshot_stride": 4 * cfg.n_steps})
        reference = integrate(u0, quarter).final
    errors = (h2_norm(coarse - reference), h2_norm(fine - reference))
    order = math.log2(errors[0] / errors[1]) if errors[1] > 0 else math.inf
    logger.info(f"Self-convergence at dt={cfg.dt}: errors={errors}, order={order:.3f}")
    return ConvergenceResult(cfg.dt, errors, order)
