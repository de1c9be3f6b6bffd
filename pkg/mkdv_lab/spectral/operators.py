"""
Dérivées spectrales, quadrature et normes de Sobolev sur la grille périodique.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from .grid import Field, Grid
from ..exceptions import ConfigurationError, NonFiniteFieldError

MAX_DERIVATIVE_ORDER = 4


def derivative_multiplier(grid: Grid, order: int) -> np.ndarray:
    """
    Multiplicateur de Fourier (i k)^order.

    Le mode de Nyquist est annulé pour les ordres impairs (convention symétrique).
    """
    mult = (1j * grid.wavenumbers) ** order
    if order % 2 == 1:
        mult[-1] = 0.0
    return mult


def _apply_noise_floor(fhat: np.ndarray, noise_floor: Optional[float]) -> np.ndarray:
    # Les coefficients au niveau de l'arrondi ne portent aucune information.
    if noise_floor:
        peak = np.max(np.abs(fhat))
        fhat = np.where(np.abs(fhat) < noise_floor * peak, 0.0, fhat)
    return fhat


def derivative_array(values: np.ndarray, grid: Grid, order: int,
                     noise_floor: Optional[float] = None) -> np.ndarray:
    """Dérivée spectrale d'un tableau brut."""
    if order < 1 or order > MAX_DERIVATIVE_ORDER:
        raise ConfigurationError(f"Derivative order must be in [1, {MAX_DERIVATIVE_ORDER}], got {order}")
    if not np.all(np.isfinite(values)):
        raise NonFiniteFieldError("Cannot differentiate a field with non-finite values")
    fhat = _apply_noise_floor(np.fft.rfft(values), noise_floor)
    return np.fft.irfft(fhat * derivative_multiplier(grid, order), n=grid.points)


def derivative_stack(values: np.ndarray, grid: Grid, orders: Sequence[int],
                     noise_floor: Optional[float] = None) -> Tuple[np.ndarray, ...]:
    """Plusieurs dérivées à partir d'une seule transformée."""
    if not np.all(np.isfinite(values)):
        raise NonFiniteFieldError("Cannot differentiate a field with non-finite values")
    fhat = _apply_noise_floor(np.fft.rfft(values), noise_floor)
    out = []
    for order in orders:
        if order < 1 or order > MAX_DERIVATIVE_ORDER:
            raise ConfigurationError(f"Derivative order must be in [1, {MAX_DERIVATIVE_ORDER}], got {order}")
        out.append(np.fft.irfft(fhat * derivative_multiplier(grid, order), n=grid.points))
    return tuple(out)


def spectral_derivative(f: Field, order: int, noise_floor: Optional[float] = None) -> Field:
    """
    Dérivée spatiale d'ordre ``order`` par multiplicateur de Fourier.

    Args:
        f: Champ à dériver
        order: Ordre de dérivation (1 à 4)
        noise_floor: Seuil relatif optionnel sous lequel les coefficients de Fourier
            sont annulés avant dérivation

    Returns:
        Champ dérivé, même instant

    Raises:
        NonFiniteFieldError: Si le champ contient des NaN/Inf
        ConfigurationError: Si l'ordre est hors de [1, 4]
    """
    try:
        values = derivative_array(f.values, f.grid, order, noise_floor)
    except NonFiniteFieldError as e:
        raise NonFiniteFieldError(f"Field at t={f.time}: {e}", time=f.time) from e
    return f.with_values(values)


def integrate(values: np.ndarray, grid: Grid) -> float:
    """Règle des trapèzes périodique sur un tableau brut."""
    return float(grid.spacing * np.sum(values))


def quadrature(f: Field) -> float:
    """Intégrale de ``f`` sur la boîte (trapèzes périodiques, précision spectrale)."""
    return integrate(f.values, f.grid)


def inner(f: Field, g: Field) -> float:
    """Produit scalaire L2 discret."""
    return integrate(f.values * g.values, f.grid)


def h2_norm_sq(f: Field) -> float:
    """Carré de la norme H2: intégrale de f^2 + f_x^2 + f_xx^2."""
    fx, fxx = derivative_stack(f.values, f.grid, (1, 2))
    return integrate(f.values ** 2 + fx ** 2 + fxx ** 2, f.grid)


def h2_norm(f: Field) -> float:
    return float(np.sqrt(h2_norm_sq(f)))


def weighted_h2_sq(f: Field, weight: np.ndarray) -> float:
    """Intégrale de (f^2 + f_x^2 + f_xx^2) pondérée par ``weight``."""
    fx, fxx = derivative_stack(f.values, f.grid, (1, 2))
    return integrate((f.values ** 2 + fx ** 2 + fxx ** 2) * weight, f.grid)


def spectral_tail(values: np.ndarray, grid: Grid, dealias: float = 2.0 / 3.0) -> float:
    """
    max|f^(k)| au-delà de ``dealias * k_max``, rapporté au maximum de |f^|.

    Mesure de résolution: un profil bien résolu a une queue au niveau de l'arrondi.
    """
    fhat = np.abs(np.fft.rfft(values))
    peak = float(np.max(fhat))
    if peak == 0.0:
        return 0.0
    tail = fhat[grid.wavenumbers > dealias * grid.max_wavenumber]
    return float(np.max(tail)) / peak if tail.size else 0.0
