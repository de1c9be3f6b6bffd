"""
Exceptions personnalisées pour le laboratoire mKdV.
"""

from typing import Optional


class LabError(Exception):
    """Exception de base pour tout le laboratoire."""
    pass


class ConfigurationError(LabError):
    """Erreur de configuration (scénario, grille, indices hors bornes...)."""
    pass


class ParameterError(ConfigurationError):
    """Paramètre physique invalide (c <= 0, alpha <= 0, beta <= 0, sigma <= 0...)."""
    pass


class NonFiniteFieldError(LabError):
    """Un champ contient des valeurs NaN ou infinies."""

    def __init__(self, message: str, step_index: Optional[int] = None,
                 time: Optional[float] = None):
        super().__init__(message)
        self.step_index = step_index
        self.time = time


class IntegrationError(LabError):
    """Échec du solveur en temps."""

    def __init__(self, message: str, step_index: Optional[int] = None,
                 time: Optional[float] = None):
        super().__init__(message)
        self.step_index = step_index
        self.time = time


class ModulationError(LabError):
    """Erreur de base pour la décomposition par modulation."""
    pass


class ObjectSwapError(ModulationError):
    """Un centre ajusté a quitté son voisinage de garde (échange d'objets ou repliement de phase)."""
    pass


class DegenerateJacobianError(ModulationError):
    """Jacobienne de Newton singulière (conditionnement > 1e12)."""
    pass


class NormalizationError(LabError):
    """Impossible de normaliser la perturbation en norme H2."""
    pass


class RetryExhaustedError(LabError):
    """Erreur après épuisement des tentatives de retry."""
    pass


class AcceptanceError(LabError):
    """Un contrôle d'acceptation a échoué."""
    pass


class TailOverflowWarning(UserWarning):
    """La queue d'un profil dépasse le seuil au bord de la boîte périodique."""
    pass
