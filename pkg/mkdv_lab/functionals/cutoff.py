"""
Troncature Psi(x) = (2/pi) arctan(exp(sqrt(sigma) x / 2)) et poids mobiles Phi_j.

Phi_j(t, x) = Psi(x - m_j(t)) pour 2 <= j <= J, avec Phi_1 = 1 et Phi_{J+1} = 0.
Les milieux m_j suivent les centres des objets: m_j = (x_{j-1} + x_j) / 2 pour j >= 3,
et m_2 avance à la vitesse max((x_1' + x_2') / 2, x_2' / 2).
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..exceptions import ConfigurationError, ParameterError
from ..solutions import Configuration, center, separation_constants
from ..spectral import Grid

logger = logging.getLogger(__name__)

# |tanh(z)| >= 1/2: zone où |Psi'''| <= (sqrt(sigma)/2) |Psi''| est vraie.
PSI_THIRD_ORDER_ZONE = math.atanh(0.5)


def _check_sigma(sigma: float):
    if not sigma > 0:
        raise ParameterError(f"Cutoff steepness must be positive, got sigma={sigma}")


def _half_rate(sigma: float) -> float:
    return 0.5 * math.sqrt(sigma)


def cutoff_psi(x, sigma: float):
    """Psi(x), calculé sans perte de précision dans les deux queues."""
    _check_sigma(sigma)
    z = _half_rate(sigma) * np.asarray(x, dtype=float)
    small = (2.0 / np.pi) * np.arctan(np.exp(-np.abs(z)))
    return np.where(z > 0, 1.0 - small, small)


def cutoff_psi_complement(x, sigma: float):
    """1 - Psi(x) = Psi(-x), sans annulation catastrophique pour x grand."""
    return cutoff_psi(-np.asarray(x, dtype=float), sigma)


def cutoff_psi_derivative(x, sigma: float, order: int = 1):
    """
    Dérivées fermées de Psi (ordre 1 à 3).

    Avec s = sqrt(sigma)/2 et z = s x:
    Psi' = (s/pi) sech z, Psi'' = -(s^2/pi) sech z tanh z,
    Psi''' = -(s^3/pi) sech z (sech^2 z - tanh^2 z).
    """
    _check_sigma(sigma)
    s = _half_rate(sigma)
    z = s * np.asarray(x, dtype=float)
    e = np.exp(-np.abs(z))
    sh = 2.0 * e / (1.0 + e * e)
    if order == 1:
        return (s / np.pi) * sh
    th = np.tanh(z)
    if order == 2:
        return -(s ** 2 / np.pi) * sh * th
    if order == 3:
        return -(s ** 3 / np.pi) * sh * (sh * sh - th * th)
    raise ConfigurationError(f"Cutoff derivative order must be 1, 2 or 3, got {order}")


@dataclass(frozen=True, eq=False)
class MidpointPath:
    """Milieu m_j(t) échantillonné, interpolé linéairement (extrapolé aux bouts)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.ndim != 1 or times.shape != values.shape or times.size == 0:
            raise ConfigurationError("Midpoint path needs matching non-empty 1-D samples")
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise ConfigurationError("Midpoint sample times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def speed(self, t: float) -> float:
        """m_j'(t), pente du segment contenant t."""
        if self.times.size < 2:
            return 0.0
        k = int(np.clip(np.searchsorted(self.times, t, side="right") - 1, 0, self.times.size - 2))
        return float((self.values[k + 1] - self.values[k]) / (self.times[k + 1] - self.times[k]))

    def __call__(self, t: float) -> float:
        if self.times.size < 2:
            return float(self.values[0])
        if t < self.times[0] or t > self.times[-1]:
            anchor = 0 if t < self.times[0] else -1
            return float(self.values[anchor] + self.speed(t) * (t - self.times[anchor]))
        return float(np.interp(t, self.times, self.values))


@dataclass(frozen=True)
class WeightProfile:
    """Poids f échantillonné avec ses trois premières dérivées et sa vitesse de transport."""

    values: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    speed: float = 0.0

    @classmethod
    def constant(cls, grid: Grid, level: float = 1.0) -> "WeightProfile":
        zero = np.zeros(grid.points)
        return cls(np.full(grid.points, level), zero, zero, zero)

    @classmethod
    def from_psi(cls, grid: Grid, sigma: float, midpoint: float,
                 speed: float = 0.0) -> "WeightProfile":
        x = grid.nodes - midpoint
        return cls(
            values=cutoff_psi(x, sigma),
            d1=cutoff_psi_derivative(x, sigma, 1),
            d2=cutoff_psi_derivative(x, sigma, 2),
            d3=cutoff_psi_derivative(x, sigma, 3),
            speed=speed,
        )


@dataclass(frozen=True)
class CutoffConfig:
    """
    Raideur sigma et milieux m_2 .. m_J d'une configuration à J objets.

    ``centers_source`` indique l'origine des centres: "exact" ou "fitted".
    """

    sigma: float
    n_objects: int
    midpoint_paths: Tuple[MidpointPath, ...] = ()
    centers_source: str = "exact"

    def __post_init__(self):
        _check_sigma(self.sigma)
        if self.n_objects < 1:
            raise ConfigurationError("Cutoff needs at least one object")
        if len(self.midpoint_paths) != self.n_objects - 1:
            raise ConfigurationError(
                f"Expected {self.n_objects - 1} midpoint paths, got {len(self.midpoint_paths)}"
            )

    def check_index(self, j: int):
        if not 1 <= j <= self.n_objects + 1:
            raise ConfigurationError(f"Weight index j={j} outside [1, {self.n_objects + 1}]")

    def midpoint(self, j: int, t: float) -> float:
        self.check_index(j)
        if j == 1 or j == self.n_objects + 1:
            raise ConfigurationError(f"Weight index j={j} has no midpoint")
        return self.midpoint_paths[j - 2](t)

    def weight_profile(self, j: int, t: float, grid: Grid) -> WeightProfile:
        """Phi_j(t, .) et ses dérivées; Phi_1 = 1, Phi_{J+1} = 0."""
        self.check_index(j)
        if j == 1:
            return WeightProfile.constant(grid, 1.0)
        if j == self.n_objects + 1:
            return WeightProfile.constant(grid, 0.0)
        path = self.midpoint_paths[j - 2]
        return WeightProfile.from_psi(grid, self.sigma, path(t), path.speed(t))

    def weight(self, j: int, t: float, grid: Grid) -> np.ndarray:
        return self.weight_profile(j, t, grid).values


def _midpoint_samples(times: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Échantillons (n_t, J - 1) des milieux m_2 .. m_J."""
    n_t, n_obj = centers.shape
    mids = np.empty((n_t, max(n_obj - 1, 0)))
    if n_obj < 2:
        return mids
    mids[:, 1:] = 0.5 * (centers[:, 1:-1] + centers[:, 2:])
    start = 0.5 * (centers[0, 0] + centers[0, 1])
    if n_t < 2:
        mids[:, 0] = start
        return mids
    rates = np.gradient(centers[:, :2], times, axis=0)
    drift = np.maximum(0.5 * (rates[:, 0] + rates[:, 1]), 0.5 * rates[:, 1])
    mids[:, 0] = start + cumulative_trapezoid(drift, times, initial=0.0)
    return mids


def cutoff_from_centers(times: Sequence[float], centers, sigma: float,
                        centers_source: str = "fitted") -> CutoffConfig:
    """
    Construit les milieux à partir de centres enregistrés.

    Args:
        times: Instants des échantillons, strictement croissants
        centers: Tableau (n_t, J) des centres x_j(t), objets triés par vitesse
        sigma: Raideur de la troncature
        centers_source: Étiquette reportée dans les rapports

    Raises:
        ConfigurationError: Si les dimensions ne concordent pas
    """
    times = np.asarray(times, dtype=float)
    centers = np.asarray(centers, dtype=float)
    if centers.ndim != 2 or centers.shape[0] != times.size or times.size == 0:
        raise ConfigurationError("Centers must be an (n_times, n_objects) array")
    mids = _midpoint_samples(times, centers)
    paths = tuple(MidpointPath(times, mids[:, k]) for k in range(mids.shape[1]))
    return CutoffConfig(sigma=sigma, n_objects=centers.shape[1],
                        midpoint_paths=paths, centers_source=centers_source)


def cutoff_from_configuration(cfg: Configuration, sigma: float,
                              t_final: float = 1.0) -> CutoffConfig:
    """Milieux issus des centres exacts (mouvement linéaire: deux instants suffisent)."""
    horizon = t_final if t_final > 0 else 1.0
    times = np.array([0.0, horizon])
    centers = np.array([[center(o, t) for o in cfg.objects] for t in times])
    return cutoff_from_centers(times, centers, sigma, centers_source="exact")


def default_sigma(cfg: Configuration) -> float:
    """sigma = min(zeta, beta^2) / 2."""
    consts = separation_constants(cfg)
    return 0.5 * min(consts.zeta, consts.beta ** 2)


def default_theta(cfg: Configuration, sigma: float) -> float:
    """theta = min(beta / 4, sqrt(sigma) / 16)."""
    _check_sigma(sigma)
    consts = separation_constants(cfg)
    return min(consts.beta / 4.0, math.sqrt(sigma) / 16.0)


def check_sigma_bound(cfg: Configuration, sigma: float) -> bool:
    """Vrai si sigma <= min(zeta, beta^2); sinon avertissement."""
    consts = separation_constants(cfg)
    bound = min(consts.zeta, consts.beta ** 2)
    if sigma > bound:
        logger.warning(f"Cutoff sigma={sigma:.4g} exceeds min(zeta, beta^2)={bound:.4g}")
        return False
    return True
