"""
Classe de base pour tous les schémas d'intégration en temps.
"""

from abc import ABC, abstractmethod
import logging
from typing import Optional

import numpy as np

from .config import SolverConfig
from .spectral import Grid
from .utils.logger import global_logger

# Logger pour ce module
logger = global_logger


class BaseScheme(ABC):
    """
    Schéma pseudo-spectral pour u_t + (u_xx + u^3)_x = 0 en variables de Fourier.

    La partie linéaire L = i k^3 est traitée exactement; la non-linéarité
    N(v) = -i k dealias(fft(u^3)) est avancée par le schéma concret.
    """

    def __init__(self, grid: Grid, config: SolverConfig, scheme_name: Optional[str] = None):
        """
        Initialise le schéma.

        Args:
            grid: Grille périodique
            config: Configuration du solveur
            scheme_name: Nom du schéma (pour les logs)
        """
        self.grid = grid
        self.config = config
        self.scheme_name = scheme_name or self.__class__.__name__
        self.logger = logging.getLogger(f"mkdv_lab.schemes.{self.scheme_name}")

        # Pas signé: direction = -1 remonte le temps
        self.step_size = config.direction * config.dt

        # Nombres d'onde avec Nyquist annulé (opérateurs impairs)
        k = np.array(grid.wavenumbers, dtype=float)
        k[-1] = 0.0
        self.k = k
        self.linear = 1j * k ** 3
        index = np.arange(k.size)
        self.dealias_mask = (index <= config.dealias * (grid.points // 2)).astype(float)

        self.prepare()
        self.logger.debug(
            f"Prepared {self.scheme_name}: points={grid.points}, length={grid.length}, "
            f"step={self.step_size}"
        )

    @abstractmethod
    def prepare(self):
        """Précalcule les coefficients dépendant de L et du pas."""
        pass

    @abstractmethod
    def advance(self, v_hat: np.ndarray) -> np.ndarray:
        """
        Avance d'un pas en variables de Fourier.

        Args:
            v_hat: Coefficients rfft de u(t)

        Returns:
            Coefficients rfft de u(t + step_size)
        """
        pass

    def nonlinear(self, v_hat: np.ndarray) -> np.ndarray:
        """-i k dealias(fft(u^3))."""
        u = np.fft.irfft(v_hat, n=self.grid.points)
        return -1j * self.k * self.dealias_mask * np.fft.rfft(u * u * u)

    def to_spectral(self, values: np.ndarray) -> np.ndarray:
        return np.fft.rfft(values)

    def to_physical(self, v_hat: np.ndarray) -> np.ndarray:
        return np.fft.irfft(v_hat, n=self.grid.points)

    def __repr__(self):
        return f"{self.__class__.__name__}(points={self.grid.points}, dt={self.config.dt})"
