"""
Tests pour les solutions exactes et les configurations.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from mkdv_lab.exceptions import ParameterError, TailOverflowWarning
from mkdv_lab.solutions import (
    BreatherParams,
    Configuration,
    SolitonParams,
    breather_arctan,
    center,
    RESIDUAL_RELATIVE_TOL,
    elliptic_residual,
    eval_breather,
    eval_object,
    eval_soliton,
    frame_shift,
    lyapunov_parameters,
    object_slope,
    param_gradient,
    required_box_length,
    residual_scale,
    separation_constants,
    soliton_profile,
    trajectory_extent,
    translate,
    velocity,
)
from mkdv_lab.spectral import Field, Grid, spectral_derivative


class TestSoliton:
    """Tests pour les solitons."""

    def test_profile_even_positive(self):
        """Test de la parité et de la positivité de Q_c."""
        x = np.linspace(-10, 10, 201)
        q = soliton_profile(2.0, x)
        assert np.all(q > 0)
        assert np.allclose(q, q[::-1])
        assert q[100] == pytest.approx(2.0)

    def test_invalid_shape(self):
        """Test de c <= 0."""
        with pytest.raises(ParameterError):
            soliton_profile(0.0, 0.0)
        with pytest.raises(ValidationError):
            SolitonParams(c=-1.0)

    def test_negative_soliton(self, grid):
        """Test du signe kappa = -1."""
        pos = eval_soliton(SolitonParams(c=1.0), 0.0, grid)
        neg = eval_soliton(SolitonParams(c=1.0, kappa=-1), 0.0, grid)
        assert np.allclose(pos.values, -neg.values)

    def test_moves_at_speed_c(self, grid):
        """Test du déplacement x0 + c t."""
        p = SolitonParams(c=2.0, x0=-3.0)
        u = eval_soliton(p, 1.5, grid)
        assert grid.nodes[np.argmax(u.values)] == pytest.approx(0.0, abs=grid.spacing)
        assert center(p, 1.5) == pytest.approx(0.0)

    def test_tail_warning(self, grid):
        """Test de l'avertissement quand la queue atteint le bord."""
        with pytest.warns(TailOverflowWarning):
            eval_soliton(SolitonParams(c=1.0, x0=45.0), 0.0, grid)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_elliptic_residual(self, grid, c):
        """Test de Q'' + Q^3 = c Q et de l'équation d'ordre quatre."""
        soliton = SolitonParams(c=c)
        assert elliptic_residual(soliton, 0.0, grid) < 1e-9
        assert elliptic_residual(soliton, 0.0, grid) < RESIDUAL_RELATIVE_TOL * residual_scale(soliton)


class TestBreather:
    """Tests pour les breathers."""

    def test_velocity_and_center(self):
        """Test de la vitesse beta^2 - 3 alpha^2 et du centre -x2 + v t."""
        b = BreatherParams(alpha=0.8, beta=2.0, x2=-20.0)
        assert velocity(b) == pytest.approx(2.08)
        assert center(b, 0.0) == pytest.approx(20.0)
        assert center(b, 10.0) == pytest.approx(40.8)

    def test_closed_form_matches_arctan_derivative(self, grid, breather):
        """Test de B = d/dx (2 sqrt(2) arctan g)."""
        t = 0.37
        arctan = Field(grid, breather_arctan(breather, t, grid.nodes))
        expected = spectral_derivative(arctan, 1).values
        assert np.max(np.abs(eval_breather(breather, t, grid).values - expected)) < 1e-9

    @pytest.mark.parametrize("obj", [SolitonParams(c=2.0, x0=1.5, kappa=-1),
                                     BreatherParams(alpha=0.8, beta=2.0, x1=0.3, x2=-4.0)])
    def test_closed_form_slope(self, grid, obj):
        """Test de la dérivée spatiale fermée contre la dérivée spectrale."""
        expected = spectral_derivative(eval_object(obj, 0.4, grid), 1).values
        assert np.max(np.abs(object_slope(obj, 0.4, grid) - expected)) < 1e-9

    def test_value_at_center(self, grid, breather):
        """Test de B(0, 0) = 2 sqrt(2) beta."""
        u = eval_breather(breather, 0.0, grid)
        assert u.values[grid.points // 2] == pytest.approx(2 * math.sqrt(2) * breather.beta, rel=1e-12)

    def test_elliptic_residual_beta_one(self, grid):
        """Test de l'équation elliptique d'ordre quatre du breather (1, 1)."""
        assert elliptic_residual(BreatherParams(alpha=1.0, beta=1.0), 0.0, grid) < 1e-8

    @pytest.mark.parametrize("alpha,beta", [(1.0, 2.0), (0.8, 2.0), (1.0, 1.0)])
    @pytest.mark.parametrize("t", [0.0, 0.37])
    def test_relative_elliptic_residual(self, grid, alpha, beta, t):
        """Test du résidu rapporté à l'échelle des termes d'ordre quatre."""
        b = BreatherParams(alpha=alpha, beta=beta)
        assert elliptic_residual(b, t, grid) < RESIDUAL_RELATIVE_TOL * residual_scale(b)

    def test_residual_converges_with_resolution(self, breather):
        """Test: passer de 2048 à 4096 points divise le résidu d'au moins 100."""
        coarse = elliptic_residual(breather, 0.0, Grid(100.0, 2048))
        fine = elliptic_residual(breather, 0.0, Grid(100.0, 4096))
        assert fine < 1e-2 * coarse

    def test_phase_shift_negates(self, grid, breather):
        """Test de B(x1 + pi / alpha) = -B."""
        shifted = breather.model_copy(update={"x1": breather.x1 + math.pi / breather.alpha})
        u = eval_breather(breather, 0.21, grid).values
        v = eval_breather(shifted, 0.21, grid).values
        assert np.max(np.abs(u + v)) < 1e-12

    def test_phase_period(self, grid, breather):
        """Test de la périodicité 2 pi / alpha en x1."""
        shifted = breather.model_copy(update={"x1": breather.x1 + 2.0 * math.pi / breather.alpha})
        u = eval_breather(breather, 0.21, grid).values
        v = eval_breather(shifted, 0.21, grid).values
        assert np.max(np.abs(u - v)) < 1e-12

    def test_invalid_parameters(self):
        """Test de alpha <= 0."""
        with pytest.raises(ValidationError):
            BreatherParams(alpha=0.0, beta=1.0)


class TestParameterGradient:
    """Tests pour les directions de modulation."""

    @pytest.mark.parametrize("obj,field", [
        (SolitonParams(c=1.3, x0=0.4), "c"),
        (SolitonParams(c=1.3, x0=0.4), "x0"),
        (BreatherParams(alpha=1.0, beta=2.0, x1=0.1, x2=-0.2), "x1"),
        (BreatherParams(alpha=1.0, beta=2.0, x1=0.1, x2=-0.2), "x2"),
    ])
    def test_against_finite_differences(self, grid, obj, field):
        """Test des dérivées paramétriques par différences centrées."""
        h, t = 1e-5, 0.2
        index = {"c": 0, "x0": 1, "x1": 0, "x2": 1}[field]
        value = getattr(obj, field)
        plus = eval_object(obj.model_copy(update={field: value + h}), t, grid).values
        minus = eval_object(obj.model_copy(update={field: value - h}), t, grid).values
        fd = (plus - minus) / (2 * h)
        grad = param_gradient(obj, t, grid)[index].values
        assert np.max(np.abs(fd - grad)) < 1e-6


class TestConfiguration:
    """Tests pour les configurations d'objets."""

    def test_velocity_order(self):
        """Test du refus de vitesses non croissantes."""
        with pytest.raises(ValidationError):
            Configuration(objects=[SolitonParams(c=2.0), SolitonParams(c=1.0, x0=30.0)])

    def test_discriminated_objects(self):
        """Test de la désérialisation par le champ kind."""
        cfg = Configuration.model_validate({"objects": [
            {"kind": "soliton", "c": 1.0},
            {"kind": "breather", "alpha": 0.8, "beta": 2.0, "x2": -40.0},
        ]})
        assert isinstance(cfg.objects[1], BreatherParams)

    def test_separation_constants(self, two_objects):
        """Test de beta, tau, zeta et v2."""
        consts = separation_constants(two_objects)
        assert consts.beta == pytest.approx(1.0)
        assert consts.tau == pytest.approx(1.08)
        assert consts.v2 == pytest.approx(2.08)
        assert consts.zeta == pytest.approx(0.27)

    def test_single_object_constants(self, single_soliton):
        """Test de zeta = +inf pour un objet seul."""
        consts = separation_constants(single_soliton)
        assert math.isinf(consts.zeta)
        assert consts.beta == pytest.approx(1.0)

    def test_lyapunov_parameters(self, two_objects):
        """Test des couples (a_j, b_j)."""
        assert lyapunov_parameters(two_objects.objects[0]) == (0.0, 1.0)
        assert lyapunov_parameters(two_objects.objects[1]) == (0.8, 2.0)

    def test_translate(self, two_objects):
        """Test de la translation de tous les centres."""
        moved = translate(two_objects, 3.5)
        for o, o0 in zip(moved.objects, two_objects.objects):
            assert center(o, 1.0) == pytest.approx(center(o0, 1.0) + 3.5)

    def test_box_and_shift(self, two_objects):
        """Test de la boîte requise et du recentrage."""
        left, right = trajectory_extent(two_objects, 50.0)
        assert required_box_length(two_objects, 50.0) == pytest.approx(right - left)
        shift = frame_shift(two_objects, 50.0)
        assert left + shift == pytest.approx(-(right + shift))
        assert required_box_length(two_objects, 50.0) < 200.0
