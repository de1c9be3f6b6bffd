"""
Solitons kappa * Q_c(x - c t - x0), avec Q_c(x) = sqrt(2c) / cosh(sqrt(c) x).
"""

import logging
import warnings

import numpy as np

from .params import SolitonParams
from ..exceptions import ParameterError, TailOverflowWarning
from ..spectral import Field, Grid

logger = logging.getLogger(__name__)

TAIL_WARNING_LEVEL = 1e-10


def sech(z):
    """sech sans débordement pour les grands arguments."""
    e = np.exp(-np.abs(z))
    return 2.0 * e / (1.0 + e * e)


def _check_shape(c: float):
    if not c > 0:
        raise ParameterError(f"Soliton shape parameter must be positive, got c={c}")


def soliton_profile(c: float, x):
    """
    Profil Q_c(x) = (2c / cosh^2(sqrt(c) x))^(1/2), positif et pair.

    Raises:
        ParameterError: Si c <= 0
    """
    _check_shape(c)
    return np.sqrt(2.0 * c) * sech(np.sqrt(c) * np.asarray(x, dtype=float))


def soliton_profile_derivative(c: float, x):
    """Q_c'(x) = -sqrt(2) c sech(sqrt(c) x) tanh(sqrt(c) x)."""
    _check_shape(c)
    z = np.sqrt(c) * np.asarray(x, dtype=float)
    return -np.sqrt(2.0) * c * sech(z) * np.tanh(z)


def soliton_profile_dc(c: float, x):
    """dQ_c/dc à x fixé: Q_c / (2c) + x Q_c' / (2c) (loi d'échelle)."""
    x = np.asarray(x, dtype=float)
    return (soliton_profile(c, x) + x * soliton_profile_derivative(c, x)) / (2.0 * c)


def check_tails(values: np.ndarray, label: str, time: float):
    """Avertit si le champ n'est pas négligeable au bord de la boîte."""
    edge = max(abs(values[0]), abs(values[-1]))
    if edge > TAIL_WARNING_LEVEL:
        message = f"{label} at t={time} has boundary value {edge:.3e} > {TAIL_WARNING_LEVEL:.0e}"
        logger.warning(message)
        warnings.warn(message, TailOverflowWarning, stacklevel=3)


def soliton_argument(p: SolitonParams, t: float, g: Grid) -> np.ndarray:
    return g.nodes - p.c * t - p.x0


def eval_soliton(p: SolitonParams, t: float, g: Grid) -> Field:
    """Soliton échantillonné kappa * Q_c(x - c t - x0) à l'instant t."""
    values = p.kappa * soliton_profile(p.c, soliton_argument(p, t, g))
    check_tails(values, "soliton", t)
    return Field(g, values, t)


def soliton_gradient(p: SolitonParams, t: float, g: Grid):
    """
    Dérivées paramétriques fermées [d_c R, d_x0 R].

    Le centre x0 + c t dépend de c, d'où le terme -t Q_c' dans d_c R.
    """
    xi = soliton_argument(p, t, g)
    dq = soliton_profile_derivative(p.c, xi)
    d_c = p.kappa * (soliton_profile_dc(p.c, xi) - t * dq)
    d_x0 = -p.kappa * dq
    return [Field(g, d_c, t), Field(g, d_x0, t)]
