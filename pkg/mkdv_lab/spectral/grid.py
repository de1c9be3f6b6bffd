"""
Grille périodique et champs échantillonnés.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from ..exceptions import ConfigurationError, NonFiniteFieldError

DEFAULT_LENGTH = 100.0
DEFAULT_POINTS = 2048


@dataclass(frozen=True)
class Grid:
    """
    Boîte périodique [-length/2, length/2) discrétisée en ``points`` noeuds.

    ``points`` est une puissance de deux >= 16 (donc pair, ce qu'exige la
    convention de la transformée réelle).
    """

    length: float = DEFAULT_LENGTH
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        if not np.isfinite(self.length) or self.length <= 0:
            raise ConfigurationError(f"Grid length must be positive, got {self.length}")
        if self.points < 16 or (self.points & (self.points - 1)) != 0:
            raise ConfigurationError(f"Grid points must be a power of two >= 16, got {self.points}")

    @property
    def spacing(self) -> float:
        return self.length / self.points

    @cached_property
    def nodes(self) -> np.ndarray:
        x = -0.5 * self.length + self.spacing * np.arange(self.points)
        x.flags.writeable = False
        return x

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Nombres d'onde de la transformée réelle (ordre standard de rfft)."""
        k = 2.0 * np.pi * np.fft.rfftfreq(self.points, d=self.spacing)
        k.flags.writeable = False
        return k

    @property
    def max_wavenumber(self) -> float:
        return float(np.pi / self.spacing)

    def zeros(self, time: float = 0.0) -> "Field":
        return Field(self, np.zeros(self.points), time)

    def sample(self, func: Callable[[np.ndarray], np.ndarray], time: float = 0.0) -> "Field":
        """Échantillonne ``func`` aux noeuds."""
        return Field(self, np.asarray(func(self.nodes), dtype=float), time)


@dataclass(frozen=True, eq=False)
class Field:
    """
    Profil réel u(t, .) échantillonné sur une grille, avec son instant.

    Les valeurs sont copiées, figées et finies: un NaN/Inf lève NonFiniteFieldError
    dès la construction.
    """

    grid: Grid
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.shape != (self.grid.points,):
            raise ConfigurationError(
                f"Field has shape {values.shape}, expected ({self.grid.points},)"
            )
        if not np.all(np.isfinite(values)):
            bad = int(np.count_nonzero(~np.isfinite(values)))
            raise NonFiniteFieldError(
                f"Field at t={self.time} has {bad} non-finite values", time=self.time
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def with_values(self, values: np.ndarray) -> "Field":
        return Field(self.grid, values, self.time)

    def at_time(self, time: float) -> "Field":
        return Field(self.grid, self.values, time)

    def _check_compatible(self, other: "Field"):
        if other.grid != self.grid:
            raise ConfigurationError("Fields live on different grids")

    def __add__(self, other):
        if isinstance(other, Field):
            self._check_compatible(other)
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    def __sub__(self, other):
        if isinstance(other, Field):
            self._check_compatible(other)
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __mul__(self, other):
        if isinstance(other, Field):
            self._check_compatible(other)
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))
