"""
Registre pour l'enregistrement dynamique des schémas d'intégration.
"""

from typing import Dict, Type

from .base import BaseScheme
from .config import SolverConfig
from .exceptions import ConfigurationError
from .spectral import Grid
from .utils.logger import global_logger

logger = global_logger


class SchemeRegistry:
    """Registre pour les schémas en temps."""

    def __init__(self):
        self._schemes: Dict[str, Type[BaseScheme]] = {}

    def register(self, name: str, scheme_class: Type[BaseScheme]):
        """
        Enregistre un schéma.

        Args:
            name: Nom du schéma (valeur de SolverConfig.scheme)
            scheme_class: Classe du schéma
        """
        if not issubclass(scheme_class, BaseScheme):
            raise ConfigurationError(f"Scheme class must inherit from BaseScheme: {scheme_class}")

        self._schemes[name] = scheme_class
        logger.debug(f"Registered scheme: {name} -> {scheme_class.__name__}")

    def unregister(self, name: str):
        """Désenregistre un schéma."""
        if name in self._schemes:
            del self._schemes[name]
            logger.debug(f"Unregistered scheme: {name}")

    def get_scheme_class(self, name: str) -> Type[BaseScheme]:
        """
        Retourne la classe d'un schéma.

        Raises:
            ConfigurationError: Si le schéma n'est pas trouvé
        """
        if name not in self._schemes:
            available = list(self._schemes.keys())
            raise ConfigurationError(f"Scheme '{name}' not found. Available: {available}")

        return self._schemes[name]

    def create_scheme(self, grid: Grid, config: SolverConfig) -> BaseScheme:
        """Instancie le schéma désigné par ``config.scheme`` sur ``grid``."""
        name = config.scheme.value if hasattr(config.scheme, "value") else str(config.scheme)
        scheme_class = self.get_scheme_class(name)
        return scheme_class(grid, config, scheme_name=name)

    def list_schemes(self) -> Dict[str, str]:
        """Retourne la liste des schémas enregistrés."""
        return {name: cls.__name__ for name, cls in self._schemes.items()}


# Instance globale du registre
registry = SchemeRegistry()


def register_scheme(name: str):
    """
    Décorateur pour enregistrer automatiquement un schéma.

    Usage:
        @register_scheme("etdrk4")
        class ETDRK4Scheme(BaseScheme):
            pass
    """
    def decorator(scheme_class: Type[BaseScheme]):
        registry.register(name, scheme_class)
        return scheme_class
    return decorator


def create_scheme(grid: Grid, config: SolverConfig) -> BaseScheme:
    """Crée un schéma via le registre global."""
    return registry.create_scheme(grid, config)


def list_available_schemes() -> Dict[str, str]:
    """Liste tous les schémas disponibles."""
    return registry.list_schemes()
