"""
Opérations sur les objets (soliton ou breather) et sur les configurations.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from .params import BreatherParams, Configuration, SolitonParams, object_velocity
from .soliton import (
    eval_soliton,
    soliton_argument,
    soliton_gradient,
    soliton_profile,
    soliton_profile_derivative,
)
from .breather import (
    breather_envelope_constant,
    breather_gradient,
    breather_slope_values,
    eval_breather,
)
from ..exceptions import ConfigurationError
from ..spectral import Field, Grid, derivative_stack

logger = logging.getLogger(__name__)

AnyObject = Union[SolitonParams, BreatherParams]

# Seuil relatif des coefficients de Fourier de u_x pour les résidus: au-dessus, la
# troncature du spectre domine le résidu (erreur ~ seuil * k_coupure^3).
RESIDUAL_NOISE_FLOOR = 1e-16

# Résidu relatif atteignable en double précision sur une grille résolue.
RESIDUAL_RELATIVE_TOL = 2e-9


def velocity(o: AnyObject) -> float:
    """Vitesse: c (soliton) ou beta^2 - 3 alpha^2 (breather)."""
    return object_velocity(o)


def center(o: AnyObject, t: float) -> float:
    """Centre à l'instant t: x0 + c t (soliton) ou -x2 + (beta^2 - 3 alpha^2) t (breather)."""
    if isinstance(o, SolitonParams):
        return o.x0 + o.c * t
    return -o.x2 + velocity(o) * t


def decay_rate(o: AnyObject) -> float:
    """Taux de décroissance exponentielle: sqrt(c) ou beta."""
    if isinstance(o, SolitonParams):
        return math.sqrt(o.c)
    return o.beta


def envelope_constant(o: AnyObject) -> float:
    """Amplitude C de la majoration |P(t, x)| <= C exp(-rate |x - center|)."""
    if isinstance(o, SolitonParams):
        return 2.0 * math.sqrt(2.0 * o.c)
    return breather_envelope_constant(o)


def lyapunov_parameters(o: AnyObject) -> Tuple[float, float]:
    """Couple (a_j, b_j): (alpha, beta) pour un breather, (0, sqrt(c)) pour un soliton."""
    if isinstance(o, SolitonParams):
        return 0.0, math.sqrt(o.c)
    return o.alpha, o.beta


def eval_object(o: AnyObject, t: float, g: Grid) -> Field:
    if isinstance(o, SolitonParams):
        return eval_soliton(o, t, g)
    return eval_breather(o, t, g)


def object_slope(o: AnyObject, t: float, g: Grid) -> np.ndarray:
    """Dérivée spatiale fermée de l'objet aux noeuds."""
    if isinstance(o, SolitonParams):
        return o.kappa * soliton_profile_derivative(o.c, soliton_argument(o, t, g))
    return breather_slope_values(o, t, g.nodes)


def eval_sum(cfg: Configuration, t: float, g: Grid) -> Field:
    """Somme ponctuelle des champs de tous les objets à l'instant t."""
    total = np.zeros(g.points)
    for o in cfg.objects:
        total += eval_object(o, t, g).values
    return Field(g, total, t)


def param_gradient(o: AnyObject, t: float, g: Grid) -> List[Field]:
    """
    Directions de modulation en paramètres.

    Returns:
        [d_c R, d_x0 R] pour un soliton, [d_x1 B, d_x2 B] pour un breather
    """
    if isinstance(o, SolitonParams):
        return soliton_gradient(o, t, g)
    return breather_gradient(o, t, g)


def modulated_values(o: AnyObject) -> Tuple[float, float]:
    """Paramètres modulés: (c, x0) ou (x1, x2)."""
    if isinstance(o, SolitonParams):
        return o.c, o.x0
    return o.x1, o.x2


def with_modulated_values(o: AnyObject, values: Sequence[float]) -> AnyObject:
    first, second = float(values[0]), float(values[1])
    if isinstance(o, SolitonParams):
        return o.model_copy(update={"c": first, "x0": second})
    return o.model_copy(update={"x1": first, "x2": second})


def translate(cfg: Configuration, shift: float) -> Configuration:
    """Configuration dont tous les champs sont translatés de ``shift`` en x."""
    moved = []
    for o in cfg.objects:
        if isinstance(o, SolitonParams):
            moved.append(o.model_copy(update={"x0": o.x0 + shift}))
        else:
            moved.append(o.model_copy(update={"x1": o.x1 - shift, "x2": o.x2 - shift}))
    return Configuration(objects=moved)


def elliptic_residual(o: AnyObject, t: float, g: Grid) -> float:
    """
    Norme max du résidu de l'équation elliptique de l'objet.

    La dérivée première est fermée; u_xx et u_xxxx en sont les dérivées
    spectrales d'ordre 1 et 3. Pour un soliton on prend le maximum du résidu
    d'ordre deux (R_xx + R^3 - c R) et de celui d'ordre quatre.
    """
    u = eval_object(o, t, g).values
    ux = object_slope(o, t, g)
    uxx, uxxxx = derivative_stack(ux, g, (1, 3), noise_floor=RESIDUAL_NOISE_FLOOR)
    quartic = uxxxx + 5.0 * u * ux ** 2 + 5.0 * u ** 2 * uxx + 1.5 * u ** 5
    if isinstance(o, SolitonParams):
        second = (uxx + u ** 3) - o.c * u
        fourth = quartic - 2.0 * o.c * (uxx + u ** 3) + o.c ** 2 * u
        return float(max(np.max(np.abs(second)), np.max(np.abs(fourth))))
    a2, b2 = o.alpha ** 2, o.beta ** 2
    fourth = quartic - 2.0 * (b2 - a2) * (uxx + u ** 3) + (a2 + b2) ** 2 * u
    return float(np.max(np.abs(fourth)))


def residual_scale(o: AnyObject) -> float:
    """
    Ordre de grandeur des termes de l'équation d'ordre quatre: c^2 max|Q_c| pour un
    soliton, (alpha^2 + beta^2)^2 max|B| pour un breather.

    Les breathers à beta grand ont leurs singularités complexes près de l'axe réel
    (spectre en exp(-0.365 k) pour beta = 2), si bien que la dérivée quatrième
    amplifie l'arrondi: leur résidu se compare à cette échelle.
    """
    if isinstance(o, SolitonParams):
        return o.c ** 2 * math.sqrt(2.0 * o.c)
    return (o.alpha ** 2 + o.beta ** 2) ** 2 * 2.0 * math.sqrt(2.0) * o.beta


@dataclass(frozen=True)
class SeparationConstants:
    """Constantes de décroissance et de séparation d'une configuration."""

    beta: float
    tau: float
    zeta: float
    v2: float


def separation_constants(cfg: Configuration) -> SeparationConstants:
    """
    beta = plus petit taux de décroissance, tau = plus petit écart de vitesses,
    zeta = min(v2/4, tau/4). Pour J <= 1, tau et zeta valent +inf.
    """
    if not cfg.objects:
        raise ConfigurationError("Separation constants need at least one object")
    beta = min(decay_rate(o) for o in cfg.objects)
    velocities = [velocity(o) for o in cfg.objects]
    if len(velocities) < 2:
        return SeparationConstants(beta=beta, tau=math.inf, zeta=math.inf, v2=math.nan)
    tau = min(b - a for a, b in zip(velocities, velocities[1:]))
    v2 = velocities[1]
    return SeparationConstants(beta=beta, tau=tau, zeta=min(v2 / 4.0, tau / 4.0), v2=v2)


def initial_separation(cfg: Configuration) -> float:
    """Demi-écart minimal entre centres initiaux consécutifs (le D de x_j > x_{j-1} + 2D)."""
    centers = [center(o, 0.0) for o in cfg.objects]
    if len(centers) < 2:
        return math.inf
    return min(b - a for a, b in zip(centers, centers[1:])) / 2.0


def trajectory_extent(cfg: Configuration, t_final: float,
                      tail_tolerance: float = 1e-12) -> Tuple[float, float]:
    """Intervalle [gauche, droite] qui contient chaque objet et sa queue sur [0, t_final]."""
    left, right = math.inf, -math.inf
    for o in cfg.objects:
        margin = max(math.log(envelope_constant(o) / tail_tolerance), 0.0) / decay_rate(o)
        start, end = center(o, 0.0), center(o, t_final)
        left = min(left, min(start, end) - margin)
        right = max(right, max(start, end) + margin)
    return left, right


def required_box_length(cfg: Configuration, t_final: float,
                        tail_tolerance: float = 1e-12) -> float:
    """Longueur minimale de boîte pour que les queues restent sous ``tail_tolerance``."""
    if not cfg.objects:
        return 0.0
    left, right = trajectory_extent(cfg, t_final, tail_tolerance)
    return right - left


def frame_shift(cfg: Configuration, t_final: float, tail_tolerance: float = 1e-12) -> float:
    """Translation qui centre l'étendue de la trajectoire dans la boîte."""
    if not cfg.objects:
        return 0.0
    left, right = trajectory_extent(cfg, t_final, tail_tolerance)
    return -0.5 * (left + right)


def peak_amplitude(o: AnyObject) -> float:
    """Majorant de |P|: sqrt(2c) pour un soliton, constante d'enveloppe sinon."""
    if isinstance(o, SolitonParams):
        return float(soliton_profile(o.c, 0.0))
    return envelope_constant(o)
