"""
Breathers B = 2 sqrt(2) d/dx arctan(g), g = (beta/alpha) sin(alpha y1) / cosh(beta y2).

Toutes les quantités s'expriment par les dérivées de g en (y1, y2):
comme d/dx = d/dy1 + d/dy2, on a B = 2 sqrt(2) (Theta_1 + Theta_2) avec
Theta_a = g_a / (1 + g^2), et d/dx_a B = 2 sqrt(2) (Theta_a1 + Theta_a2).
"""

from dataclasses import dataclass

import numpy as np

from .params import BreatherParams
from .soliton import sech, check_tails
from ..spectral import Field, Grid

SQRT8 = 2.0 * np.sqrt(2.0)


@dataclass(frozen=True)
class ArctanDerivatives:
    """Dérivées premières et secondes de arctan(g) par rapport à (y1, y2)."""

    theta_1: np.ndarray
    theta_2: np.ndarray
    theta_11: np.ndarray
    theta_12: np.ndarray
    theta_22: np.ndarray


def breather_phases(p: BreatherParams, t: float, x) -> tuple:
    """Variables y1 = x + delta t + x1 et y2 = x + gamma t + x2."""
    x = np.asarray(x, dtype=float)
    return x + p.delta * t + p.x1, x + p.gamma * t + p.x2


def arctan_derivatives(p: BreatherParams, t: float, x) -> ArctanDerivatives:
    a, b = p.alpha, p.beta
    y1, y2 = breather_phases(p, t, x)
    s, co = np.sin(a * y1), np.cos(a * y1)
    sh, th = sech(b * y2), np.tanh(b * y2)

    g = (b / a) * s * sh
    g1 = b * co * sh
    g2 = -(b * b / a) * s * sh * th
    g11 = -a * b * s * sh
    g12 = -b * b * co * sh * th
    g22 = -(b ** 3 / a) * s * sh * (sh * sh - th * th)

    h = 1.0 + g * g
    h2 = h * h
    return ArctanDerivatives(
        theta_1=g1 / h,
        theta_2=g2 / h,
        theta_11=(g11 * h - 2.0 * g * g1 * g1) / h2,
        theta_12=(g12 * h - 2.0 * g * g1 * g2) / h2,
        theta_22=(g22 * h - 2.0 * g * g2 * g2) / h2,
    )


def breather_values(p: BreatherParams, t: float, x) -> np.ndarray:
    """Formule fermée de B en des points arbitraires."""
    d = arctan_derivatives(p, t, x)
    return SQRT8 * (d.theta_1 + d.theta_2)


def breather_slope_values(p: BreatherParams, t: float, x) -> np.ndarray:
    """B_x = 2 sqrt(2) (Theta_11 + 2 Theta_12 + Theta_22) en des points arbitraires."""
    d = arctan_derivatives(p, t, x)
    return SQRT8 * (d.theta_11 + 2.0 * d.theta_12 + d.theta_22)


def breather_arctan(p: BreatherParams, t: float, x) -> np.ndarray:
    """2 sqrt(2) arctan(g): sa dérivée spectrale sert d'oracle pour B."""
    y1, y2 = breather_phases(p, t, x)
    g = (p.beta / p.alpha) * np.sin(p.alpha * y1) * sech(p.beta * y2)
    return SQRT8 * np.arctan(g)


def eval_breather(p: BreatherParams, t: float, g: Grid) -> Field:
    """Breather échantillonné à l'instant t."""
    values = breather_values(p, t, g.nodes)
    check_tails(values, "breather", t)
    return Field(g, values, t)


def breather_gradient(p: BreatherParams, t: float, g: Grid):
    """Dérivées paramétriques fermées [d_x1 B, d_x2 B]."""
    d = arctan_derivatives(p, t, g.nodes)
    return [
        Field(g, SQRT8 * (d.theta_11 + d.theta_12), t),
        Field(g, SQRT8 * (d.theta_12 + d.theta_22), t),
    ]


def breather_envelope_constant(p: BreatherParams) -> float:
    """Constante C telle que |B| <= C exp(-beta |y2|) (majoration de |g_1| + |g_2|)."""
    return 2.0 * SQRT8 * (p.beta + p.beta ** 2 / p.alpha)
