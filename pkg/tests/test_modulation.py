"""
Tests pour l'ajustement des paramètres modulés et leur suivi.
"""

import math

import numpy as np
import pytest

from mkdv_lab.config import SolverConfig
from mkdv_lab.exceptions import DegenerateJacobianError
from mkdv_lab.harness import random_h2
from mkdv_lab.integrator import integrate
from mkdv_lab.modulation import (
    fit,
    guard_radii,
    local_epsilon_weight,
    ortho_extended_residuals,
    theorem_distance,
    track,
)
from mkdv_lab.solutions import (
    BreatherParams,
    Configuration,
    SolitonParams,
    eval_sum,
    modulated_values,
    translate,
)
from mkdv_lab.spectral import Field


def _params(cfg: Configuration) -> np.ndarray:
    return np.array([v for o in cfg.objects for v in modulated_values(o)])


@pytest.fixture
def perturbed_guess():
    """Point de départ décalé de la configuration deux objets."""
    return Configuration(objects=[
        SolitonParams(c=1.05, x0=-19.7),
        BreatherParams(alpha=0.8, beta=2.0, x1=0.1, x2=-20.2),
    ])


class TestFit:
    """Tests pour fit."""

    def test_exact_recovery(self, grid, two_objects, perturbed_guess):
        """Test du retour aux paramètres exacts depuis un point décalé."""
        u = eval_sum(two_objects, 0.0, grid)
        result = fit(u, perturbed_guess, tol=1e-12)
        assert result.converged
        assert np.max(np.abs(_params(result.params) - _params(two_objects))) < 1e-8
        assert result.h2_of_epsilon < 1e-8
        assert not result.guard_bound
        assert result.residual_history[-1] <= 1e-12
        assert list(result.residual_history) == sorted(result.residual_history, reverse=True)

    def test_shift_recovery(self, grid, two_objects):
        """Test du retour d'une translation de 0.1 à 1e-10 près."""
        shifted = translate(two_objects, 0.1)
        result = fit(eval_sum(shifted, 0.0, grid), two_objects, tol=1e-12)
        assert result.converged
        assert np.max(np.abs(_params(result.params) - _params(shifted))) < 1e-10

    def test_translation_equivariance(self, grid, two_objects):
        """Test: translater le profil de k mailles translate les paramètres ajustés d'autant."""
        u = eval_sum(two_objects, 0.0, grid) + random_h2(grid, 1e-3, seed=3)
        cells = 8
        shift = cells * grid.spacing
        moved = u.with_values(np.roll(u.values, cells))
        base = fit(u, two_objects, tol=1e-12)
        other = fit(moved, translate(two_objects, shift), tol=1e-12)
        expected = _params(translate(base.params, shift))
        assert np.max(np.abs(_params(other.params) - expected)) < 1e-10
        assert other.h2_of_epsilon == pytest.approx(base.h2_of_epsilon, rel=1e-9)

    @pytest.mark.parametrize("a", [1e-4, 1e-3, 1e-2])
    def test_perturbed_sum(self, grid, two_objects, a):
        """Test: paramètres et ||eps|| en O(a)."""
        u = eval_sum(two_objects, 0.0, grid) + random_h2(grid, a, seed=3)
        result = fit(u, two_objects, tol=1e-12)
        assert result.converged
        assert np.max(np.abs(_params(result.params) - _params(two_objects))) <= 10 * a
        assert result.h2_of_epsilon <= 2 * a
        assert np.max(np.abs(result.ortho_residuals)) <= 1e-12

    def test_iteration_cap(self, grid, two_objects, perturbed_guess):
        """Test de max_iter atteint: meilleur itéré, converged = False."""
        u = eval_sum(two_objects, 0.0, grid)
        result = fit(u, perturbed_guess, tol=1e-12, max_iter=1)
        assert not result.converged
        assert result.iterations == 1
        assert result.residual_history[1] < result.residual_history[0]

    def test_degenerate_jacobian(self, grid, single_soliton):
        """Test d'un profil nul: la position du soliton n'est pas identifiable."""
        with pytest.raises(DegenerateJacobianError):
            fit(grid.zeros(), single_soliton)

    def test_empty_configuration(self, grid):
        """Test d'une configuration vide: eps = u."""
        u = Field(grid, random_h2(grid, 1e-3, seed=5))
        result = fit(u, Configuration.model_construct(objects=[]))
        assert result.converged
        assert result.h2_of_epsilon == pytest.approx(1e-3)


class TestGuard:
    """Tests pour les rayons de garde."""

    def test_two_objects(self, two_objects):
        """Test de D/4 et min(D/4, pi/(2 alpha))."""
        radii = guard_radii(two_objects, 200.0)
        assert math.isinf(radii[0])
        assert radii[1] == pytest.approx(5.0)
        assert radii[2] == pytest.approx(math.pi / 1.6)
        assert radii[3] == pytest.approx(math.pi / 1.6)

    def test_single_object(self, single_soliton):
        """Test de la demi-boîte pour un objet seul."""
        radii = guard_radii(single_soliton, 100.0)
        assert radii[1] == pytest.approx(12.5)


class TestDiagnostics:
    """Tests pour les diagnostics dérivés de l'ajustement."""

    def test_extended_orthogonality_on_exact_sum(self, grid, two_objects):
        """Test des intégrales étendues nulles quand eps = 0."""
        result = fit(eval_sum(two_objects, 0.0, grid), two_objects, tol=1e-12)
        extended = ortho_extended_residuals(result)
        assert extended.shape == (2,)
        assert np.max(np.abs(extended)) < 1e-10

    def test_theorem_distance_freezes_shape(self, grid, two_objects):
        """Test: la forme c0 initiale remplace la forme ajustée."""
        u = eval_sum(two_objects, 0.0, grid)
        fitted = Configuration(objects=[
            SolitonParams(c=1.2, x0=-20.0),
            two_objects.objects[1],
        ])
        assert theorem_distance(u, fitted, two_objects) < 1e-12

    def test_local_weight(self, grid):
        """Test de int exp(-beta |x - z| / 2) eps^2."""
        assert local_epsilon_weight(grid.zeros(), 0.0, 1.0) == 0.0
        ones = Field(grid, np.ones(grid.points))
        assert local_epsilon_weight(ones, 0.0, 1.0) == pytest.approx(4.0, rel=1e-3)


class TestTrack:
    """Tests pour le suivi le long d'une trajectoire."""

    def test_soliton_track(self, coarse_grid, single_soliton):
        """Test du suivi d'un soliton exact: paramètres constants."""
        cfg = SolverConfig(dt=1e-3, t_final=0.5, snapshot_stride=100)
        traj = integrate(eval_sum(single_soliton, 0.0, coarse_grid), cfg)
        mod = track(traj, single_soliton)
        assert not mod.truncated
        assert len(mod.results) == 6
        params = mod.parameters()
        assert np.max(np.abs(params[:, 0] - 1.0)) < 1e-8
        assert np.max(np.abs(params[:, 1])) < 1e-8
        assert np.max(np.abs(mod.parameter_rates)) < 1e-6
        assert mod.centers()[-1, 0] == pytest.approx(0.5, abs=1e-8)

    def test_truncated_on_failure(self, coarse_grid, single_soliton):
        """Test de la troncature quand un ajustement ne converge pas."""
        cfg = SolverConfig(dt=1e-3, t_final=0.2, snapshot_stride=100)
        traj = integrate(eval_sum(single_soliton, 0.0, coarse_grid), cfg)
        guess = Configuration(objects=[SolitonParams(c=1.3, x0=0.5)])
        mod = track(traj, guess, tol=1e-14, max_iter=1)
        assert mod.truncated
        assert mod.truncated_at == pytest.approx(0.0)
        assert mod.failure.startswith("not converged")
        assert mod.results == ()
