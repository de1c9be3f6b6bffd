"""
Lois de conservation M, E, F de mKdV.
"""

from typing import NamedTuple, Tuple

import numpy as np

from ..spectral import Field, Grid, derivative_stack, integrate


class Triple(NamedTuple):
    """Valeurs (masse, énergie, F) d'une même quantité."""

    mass: float
    energy: float
    f_second: float


def localized_densities(values: np.ndarray, grid: Grid) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Densités de M, E et F: u^2/2, u_x^2/2 - u^4/4 et u_xx^2/2 - 5 u^2 u_x^2 / 2 + u^6/4."""
    ux, uxx = derivative_stack(values, grid, (1, 2))
    u2 = values * values
    rho_m = 0.5 * u2
    rho_e = 0.5 * ux ** 2 - 0.25 * u2 ** 2
    rho_f = 0.5 * uxx ** 2 - 2.5 * u2 * ux ** 2 + 0.25 * u2 ** 3
    return rho_m, rho_e, rho_f


def mass(u: Field) -> float:
    return integrate(0.5 * u.values ** 2, u.grid)


def energy(u: Field) -> float:
    _, rho_e, _ = localized_densities(u.values, u.grid)
    return integrate(rho_e, u.grid)


def f_second(u: Field) -> float:
    _, _, rho_f = localized_densities(u.values, u.grid)
    return integrate(rho_f, u.grid)


def conserved_triple(u: Field) -> Triple:
    """Les trois lois globales en une seule passe spectrale."""
    rho_m, rho_e, rho_f = localized_densities(u.values, u.grid)
    return Triple(integrate(rho_m, u.grid), integrate(rho_e, u.grid), integrate(rho_f, u.grid))
