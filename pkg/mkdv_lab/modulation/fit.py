"""
Ajustement des paramètres modulés par les conditions d'orthogonalité.

Pour un soliton R on ajuste (c, x0) de sorte que int R eps = int R_x eps = 0;
pour un breather B on ajuste (x1, x2) de sorte que int d_x1 B eps = int d_x2 B eps = 0.
La résolution est un Newton amorti sur le vecteur des intégrales.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from pydantic import ValidationError

from ..exceptions import (
    DegenerateJacobianError,
    ModulationError,
    ObjectSwapError,
    ParameterError,
)
from ..solutions import (
    BreatherParams,
    Configuration,
    SolitonParams,
    center,
    eval_sum,
    modulated_values,
    with_modulated_values,
)
from ..solutions.breather import SQRT8, arctan_derivatives
from ..solutions.soliton import soliton_argument, soliton_gradient, soliton_profile
from ..spectral import Field, Grid, derivative_array, derivative_stack, h2_norm, integrate

logger = logging.getLogger(__name__)

MAX_HALVINGS = 20
CONDITION_LIMIT = 1e12
DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_ITER = 50


@dataclass(frozen=True, eq=False)
class ModulationResult:
    """Paramètres ajustés, eps = u - somme ajustée et diagnostics de Newton."""

    params: Configuration
    epsilon: Field
    ortho_residuals: np.ndarray
    h2_of_epsilon: float
    iterations: int
    converged: bool
    guard_bound: bool = False
    residual_history: Tuple[float, ...] = ()

    @property
    def time(self) -> float:
        return self.epsilon.time


@dataclass
class _ObjectTerms:
    values: np.ndarray
    directions: List[np.ndarray]
    gradient: List[np.ndarray]
    # direction_derivatives[i][k] = d_k (direction i)
    direction_derivatives: List[List[np.ndarray]]


def _soliton_terms(o: SolitonParams, t: float, grid: Grid) -> _ObjectTerms:
    xi = soliton_argument(o, t, grid)
    r = o.kappa * soliton_profile(o.c, xi)
    d_c, d_x0 = (f.values for f in soliton_gradient(o, t, grid))
    r_x = -d_x0
    r_xx = o.c * r - r ** 3
    return _ObjectTerms(
        values=r,
        directions=[r, r_x],
        gradient=[d_c, d_x0],
        direction_derivatives=[
            [d_c, d_x0],
            [derivative_array(d_c, grid, 1), -r_xx],
        ],
    )


def _breather_terms(o: BreatherParams, t: float, grid: Grid) -> _ObjectTerms:
    d = arctan_derivatives(o, t, grid.nodes)
    b = SQRT8 * (d.theta_1 + d.theta_2)
    g1 = SQRT8 * (d.theta_11 + d.theta_12)
    g2 = SQRT8 * (d.theta_12 + d.theta_22)
    h11 = SQRT8 * derivative_array(d.theta_11, grid, 1)
    h12 = SQRT8 * derivative_array(d.theta_12, grid, 1)
    h22 = SQRT8 * derivative_array(d.theta_22, grid, 1)
    return _ObjectTerms(
        values=b,
        directions=[g1, g2],
        gradient=[g1, g2],
        direction_derivatives=[[h11, h12], [h12, h22]],
    )


def _terms(o, t: float, grid: Grid) -> _ObjectTerms:
    if isinstance(o, SolitonParams):
        return _soliton_terms(o, t, grid)
    return _breather_terms(o, t, grid)


def _pack(cfg: Configuration) -> np.ndarray:
    return np.array([v for o in cfg.objects for v in modulated_values(o)], dtype=float)


def _unpack(cfg: Configuration, z: np.ndarray) -> Configuration:
    objects = [with_modulated_values(o, z[2 * i:2 * i + 2]) for i, o in enumerate(cfg.objects)]
    return Configuration.model_construct(objects=objects)


def _residual(u: Field, cfg: Configuration) -> Tuple[np.ndarray, np.ndarray, List[_ObjectTerms]]:
    terms = [_terms(o, u.time, u.grid) for o in cfg.objects]
    p = np.zeros(u.grid.points)
    for term in terms:
        p += term.values
    eps = u.values - p
    g = np.array([integrate(d * eps, u.grid) for term in terms for d in term.directions])
    return g, eps, terms


def _jacobian(eps: np.ndarray, terms: List[_ObjectTerms], grid: Grid) -> np.ndarray:
    n = 2 * len(terms)
    jac = np.zeros((n, n))
    for a, term_a in enumerate(terms):
        for i, d_i in enumerate(term_a.directions):
            row = 2 * a + i
            for b, term_b in enumerate(terms):
                for k, dp_k in enumerate(term_b.gradient):
                    col = 2 * b + k
                    jac[row, col] = -integrate(d_i * dp_k, grid)
                    if a == b:
                        jac[row, col] += integrate(term_a.direction_derivatives[i][k] * eps, grid)
    return jac


def guard_radii(guess: Configuration, length: float, t: float = 0.0) -> np.ndarray:
    """
    Rayons de garde par paramètre: D/4 pour les positions, min(D/4, pi/(2 alpha))
    pour les breathers, aucun pour c. D est le demi-écart minimal entre centres du
    point de départ à l'instant t (la demi-longueur de boîte pour un objet seul).
    """
    centers = [center(o, t) for o in guess.objects]
    if len(centers) >= 2:
        gaps = np.diff(np.sort(centers))
        half_gap = float(np.min(gaps)) / 2.0
    else:
        half_gap = length / 2.0
    radii = []
    for o in guess.objects:
        if isinstance(o, SolitonParams):
            radii += [math.inf, half_gap / 4.0]
        else:
            r = min(half_gap / 4.0, math.pi / (2.0 * o.alpha))
            radii += [r, r]
    return np.array(radii)


def _clip_to_guard(z0: np.ndarray, z_trial: np.ndarray, z_guess: np.ndarray,
                   radii: np.ndarray) -> Tuple[np.ndarray, bool]:
    """Raccourcit le pas pour rester dans les rayons de garde."""
    step = z_trial - z0
    factor = 1.0
    for k in np.flatnonzero(np.isfinite(radii)):
        if abs(z_trial[k] - z_guess[k]) <= radii[k] or step[k] == 0.0:
            continue
        bound = z_guess[k] + math.copysign(radii[k], z_trial[k] - z_guess[k])
        factor = min(factor, max((bound - z0[k]) / step[k], 0.0))
    if factor < 1.0:
        return z0 + factor * step, True
    return z_trial, False


def fit(u: Field, guess: Configuration, tol: float = DEFAULT_TOLERANCE,
        max_iter: int = DEFAULT_MAX_ITER) -> ModulationResult:
    """
    Ajuste les paramètres modulés de ``guess`` sur le profil ``u``.

    Args:
        u: Profil à décomposer
        guess: Point de départ, même nombre et types d'objets que la solution cherchée
        tol: Tolérance sur max |int d_i eps|
        max_iter: Nombre maximal d'itérations de Newton

    Returns:
        ModulationResult; converged=False (meilleur itéré) si max_iter est atteint

    Raises:
        DegenerateJacobianError: Si le conditionnement du jacobien dépasse 1e12
        ObjectSwapError: Si l'itéré final est bloqué sur le rayon de garde
    """
    grid = u.grid
    if not guess.objects:
        return ModulationResult(guess, u, np.zeros(0), h2_norm(u), 0, True)

    radii = guard_radii(guess, grid.length, u.time)
    z_guess = _pack(guess)
    z = z_guess.copy()
    cfg = guess
    g, eps, terms = _residual(u, cfg)
    norm = float(np.max(np.abs(g)))
    history = [norm]
    guard_bound = False
    iterations = 0

    while norm > tol and iterations < max_iter:
        jac = _jacobian(eps, terms, grid)
        cond = np.linalg.cond(jac)
        if not np.isfinite(cond) or cond > CONDITION_LIMIT:
            raise DegenerateJacobianError(
                f"Modulation Jacobian condition number {cond:.3e} exceeds {CONDITION_LIMIT:.0e}"
            )
        full_step = -np.linalg.solve(jac, g)
        iterations += 1

        accepted = False
        scale = 1.0
        for _ in range(MAX_HALVINGS + 1):
            z_trial, clipped = _clip_to_guard(z, z + scale * full_step, z_guess, radii)
            try:
                cfg_trial = _unpack(guess, z_trial)
                g_trial, eps_trial, terms_trial = _residual(u, cfg_trial)
            except ParameterError:
                scale *= 0.5
                continue
            norm_trial = float(np.max(np.abs(g_trial)))
            if np.isfinite(norm_trial) and norm_trial < norm:
                accepted = True
                guard_bound = guard_bound or clipped
                break
            scale *= 0.5

        if not accepted:
            logger.debug(f"Newton stalled at |G|={norm:.3e} after {iterations} iterations")
            break
        z, cfg, g, eps, terms, norm = z_trial, cfg_trial, g_trial, eps_trial, terms_trial, norm_trial
        history.append(norm)
        logger.debug(f"Newton iteration {iterations}: |G|={norm:.3e}, damping={scale:g}")

    converged = norm <= tol
    on_boundary = np.isfinite(radii) & (np.abs(z - z_guess) >= radii * (1.0 - 1e-9))
    if np.any(on_boundary):
        raise ObjectSwapError(
            f"Modulated parameters {np.flatnonzero(on_boundary).tolist()} reached the basin "
            f"guard at t={u.time}"
        )
    if not converged:
        logger.warning(f"Modulation at t={u.time} stopped at |G|={norm:.3e} > tol={tol:.1e}")

    try:
        params = Configuration(objects=list(cfg.objects))
    except ValidationError as e:
        raise ModulationError(f"Fitted parameters at t={u.time} are not a valid configuration: {e}") from e
    epsilon = Field(grid, eps, u.time)
    return ModulationResult(
        params=params,
        epsilon=epsilon,
        ortho_residuals=g,
        h2_of_epsilon=h2_norm(epsilon),
        iterations=iterations,
        converged=converged,
        guard_bound=guard_bound,
        residual_history=tuple(history),
    )


def ortho_extended_residuals(r: ModulationResult) -> np.ndarray:
    """
    Pour chaque soliton ajusté: int (R_xx + R^3) eps et
    int (R_xxxx + 5 R R_x^2 + 5 R^2 R_xx + 3/2 R^5) eps.
    """
    eps = r.epsilon
    grid = eps.grid
    out = []
    for o in r.params.objects:
        if not isinstance(o, SolitonParams):
            continue
        rr = o.kappa * soliton_profile(o.c, soliton_argument(o, eps.time, grid))
        rx, rxx, rxxxx = derivative_stack(rr, grid, (1, 2, 4))
        out.append(integrate((rxx + rr ** 3) * eps.values, grid))
        quartic = rxxxx + 5.0 * rr * rx ** 2 + 5.0 * rr ** 2 * rxx + 1.5 * rr ** 5
        out.append(integrate(quartic * eps.values, grid))
    return np.array(out)


def theorem_distance(u: Field, fitted: Configuration, initial: Configuration) -> float:
    """
    Distance H2 de u à la somme ajustée où chaque soliton garde sa forme initiale c0
    (seules les translations et phases sont modulées).
    """
    frozen = []
    for o, o0 in zip(fitted.objects, initial.objects):
        if isinstance(o, SolitonParams) and isinstance(o0, SolitonParams):
            frozen.append(o.model_copy(update={"c": o0.c}))
        else:
            frozen.append(o)
    reference = eval_sum(Configuration.model_construct(objects=frozen), u.time, u.grid)
    return h2_norm(u - reference)


def local_epsilon_weight(eps: Field, center_position: float, beta: float) -> float:
    """int exp(-(beta/2) |x - z|) eps^2."""
    weight = np.exp(-0.5 * beta * np.abs(eps.grid.nodes - center_position))
    return integrate(weight * eps.values ** 2, eps.grid)

