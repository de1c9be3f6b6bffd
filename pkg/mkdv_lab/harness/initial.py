"""
Données initiales: somme exacte plus perturbation de norme H2 imposée.
"""

import logging

import numpy as np

from ..config import PerturbationConfig, PerturbationKind, Scenario
from ..exceptions import NormalizationError, RetryExhaustedError
from ..solutions import Configuration, eval_sum, translate
from ..spectral import Field, Grid, h2_norm
from ..utils import retry_on_exception

logger = logging.getLogger(__name__)


def _normalize(values: np.ndarray, grid: Grid, amplitude: float) -> np.ndarray:
    norm = h2_norm(Field(grid, values))
    if not np.isfinite(norm) or norm == 0.0:
        raise NormalizationError(f"Perturbation has H2 norm {norm}, cannot scale to {amplitude}")
    return values * (amplitude / norm)


def _generator(seed: int, attempt: int) -> np.random.Generator:
    if attempt == 0:
        return np.random.default_rng(seed)
    return np.random.default_rng([seed, attempt])


@retry_on_exception(max_attempts=2, exceptions=NormalizationError)
def random_h2(grid: Grid, amplitude: float, seed: int, bandwidth: float = 0.125,
              attempt: int = 0) -> np.ndarray:
    """
    Bruit à bande limitée (indices de Fourier 1 .. bandwidth * points) de norme H2
    égale à ``amplitude``. Une seconde tentative change de graine.
    """
    rng = _generator(seed, attempt)
    n_modes = max(1, int(bandwidth * grid.points))
    coeffs = np.zeros(grid.points // 2 + 1, dtype=complex)
    coeffs[1:n_modes + 1] = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    values = np.fft.irfft(coeffs, n=grid.points)
    return _normalize(values, grid, amplitude)


def directed_bump(grid: Grid, amplitude: float, bump_center: float,
                  bump_width: float) -> np.ndarray:
    """Gaussienne exp(-((x - centre) / largeur)^2) de norme H2 ``amplitude``."""
    values = np.exp(-((grid.nodes - bump_center) / bump_width) ** 2)
    return _normalize(values, grid, amplitude)


def perturbation_values(p: PerturbationConfig, grid: Grid, shift: float = 0.0) -> np.ndarray:
    """
    Perturbation décrite par ``p`` (zéro si a = 0 ou kind = none).

    Raises:
        NormalizationError: Si le tirage reste nul après un changement de graine
    """
    if p.amplitude == 0.0 or p.kind == PerturbationKind.NONE:
        if p.amplitude > 0.0:
            logger.warning(f"Perturbation kind 'none' ignores amplitude {p.amplitude}")
        return np.zeros(grid.points)
    if p.kind == PerturbationKind.DIRECTED:
        return directed_bump(grid, p.amplitude, p.bump_center + shift, p.bump_width)
    try:
        return random_h2(grid, p.amplitude, p.seed, p.bandwidth)
    except RetryExhaustedError as e:
        raise NormalizationError(f"Random perturbation with seed {p.seed} failed: {e}") from e


def build_initial(s: Scenario, g: Grid, shift: float = 0.0) -> Field:
    """
    u(0) = somme exacte (translatée de ``shift``) + perturbation.

    Args:
        s: Scénario
        g: Grille
        shift: Translation appliquée à la configuration et au centre de la bosse
    """
    cfg: Configuration = translate(s.objects, shift) if shift else s.objects
    base = eval_sum(cfg, 0.0, g)
    u0 = base + perturbation_values(s.perturbation, g, shift)
    logger.info(
        f"Built initial data: {len(cfg.objects)} objects, perturbation "
        f"{s.perturbation.kind.value} with a={s.perturbation.amplitude}"
    )
    return u0
