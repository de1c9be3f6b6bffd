"""
Tests pour les lois de conservation, la troncature et les fonctionnelles localisées.
"""

import math

import numpy as np
import pytest

from mkdv_lab.exceptions import ConfigurationError, ParameterError
from mkdv_lab.functionals import (
    PSI_THIRD_ORDER_ZONE,
    CutoffConfig,
    Triple,
    WeightProfile,
    appendix_rhs,
    check_sigma_bound,
    conserved_triple,
    cutoff_from_centers,
    cutoff_from_configuration,
    cutoff_psi,
    cutoff_psi_complement,
    cutoff_psi_derivative,
    default_sigma,
    default_theta,
    energy,
    f_second,
    functional_report,
    localized_densities,
    localized_triple,
    lyapunov,
    lyapunov_combination,
    mass,
    taylor_parts,
)
from mkdv_lab.harness import directed_bump, random_h2
from mkdv_lab.solutions import SolitonParams, eval_object, eval_sum
from mkdv_lab.spectral import Field, integrate


class TestConservation:
    """Tests pour M, E et F."""

    def test_anchors(self, grid):
        """Test de M[Q] = 2, E[Q] = -2/3, F[Q] = 2/5."""
        q = eval_object(SolitonParams(c=1.0), 0.0, grid)
        m, e, f = conserved_triple(q)
        assert m == pytest.approx(2.0, abs=1e-10)
        assert e == pytest.approx(-2.0 / 3.0, abs=1e-10)
        assert f == pytest.approx(0.4, abs=1e-10)

    @pytest.mark.parametrize("c", [0.5, 2.0])
    def test_scaling_laws(self, grid, c):
        """Test des lois d'échelle en c."""
        q = eval_object(SolitonParams(c=c), 0.0, grid)
        assert mass(q) == pytest.approx(2.0 * c ** 0.5, abs=1e-9)
        assert energy(q) == pytest.approx(-(2.0 / 3.0) * c ** 1.5, abs=1e-9)
        assert f_second(q) == pytest.approx(0.4 * c ** 2.5, abs=1e-9)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_lyapunov_anchor(self, grid, c):
        """Test de F + 2 c E + c^2 M = 16/15 c^(5/2)."""
        triple = conserved_triple(eval_object(SolitonParams(c=c), 0.0, grid))
        h = lyapunov_combination(triple, 0.0, math.sqrt(c))
        assert h == pytest.approx(16.0 / 15.0 * c ** 2.5, abs=1e-9)

    def test_lyapunov_requires_positive_b(self):
        """Test de b <= 0."""
        with pytest.raises(ParameterError):
            lyapunov_combination(Triple(1.0, 1.0, 1.0), 0.5, 0.0)

    def test_densities_integrate_to_triple(self, grid, breather):
        """Test de la cohérence densités / intégrales."""
        u = eval_object(breather, 0.1, grid)
        rhos = localized_densities(u.values, grid)
        triple = conserved_triple(u)
        for rho, value in zip(rhos, triple):
            assert integrate(rho, grid) == pytest.approx(value, rel=1e-14)


class TestCutoff:
    """Tests pour Psi et ses dérivées."""

    def test_values(self):
        """Test de Psi(0) = 1/2 et des limites."""
        assert float(cutoff_psi(0.0, 0.5)) == pytest.approx(0.5)
        assert float(cutoff_psi(200.0, 0.5)) == pytest.approx(1.0)
        assert float(cutoff_psi(-200.0, 0.5)) == pytest.approx(0.0, abs=1e-12)

    def test_complement_in_tail(self):
        """Test de 1 - Psi sans annulation pour x grand."""
        x = 80.0
        s = 0.5 * math.sqrt(0.5)
        assert float(cutoff_psi_complement(x, 0.5)) == pytest.approx(
            (2 / math.pi) * math.atan(math.exp(-s * x)), rel=1e-12)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_derivatives_against_finite_differences(self, order):
        """Test des dérivées fermées."""
        sigma, h = 0.8, 1e-4
        x = np.linspace(-20, 20, 81)

        def lower(y):
            return cutoff_psi(y, sigma) if order == 1 else cutoff_psi_derivative(y, sigma, order - 1)

        fd = (lower(x + h) - lower(x - h)) / (2 * h)
        assert np.max(np.abs(fd - cutoff_psi_derivative(x, sigma, order))) < 1e-8

    def test_bounds(self):
        """Test de Psi' > 0, |Psi'''| <= s^2 Psi' et |Psi'| <= s (1 - Psi)."""
        sigma = 0.5
        s = 0.5 * math.sqrt(sigma)
        x = np.linspace(-50, 50, 2001)
        d1, d2, d3 = (cutoff_psi_derivative(x, sigma, k) for k in (1, 2, 3))
        assert np.all(d1 > 0)
        assert np.all(np.abs(d3) <= s * s * d1 * (1 + 1e-12))
        assert np.all(d1 <= s * cutoff_psi_complement(x, sigma) * (1 + 1e-12))
        zone = np.abs(s * x) >= PSI_THIRD_ORDER_ZONE
        assert np.all(np.abs(d3[zone]) <= s * np.abs(d2[zone]) * (1 + 1e-12))

    def test_third_order_bound_fails_near_origin(self):
        """Test de la violation de |Psi'''| <= s |Psi''| près de 0."""
        sigma = 0.5
        s = 0.5 * math.sqrt(sigma)
        x = 0.1 / s
        assert abs(float(cutoff_psi_derivative(x, sigma, 3))) > s * abs(float(cutoff_psi_derivative(x, sigma, 2)))

    def test_invalid_sigma(self):
        """Test de sigma <= 0."""
        with pytest.raises(ParameterError):
            cutoff_psi(0.0, 0.0)
        with pytest.raises(ParameterError):
            cutoff_psi_derivative(0.0, -1.0)

    def test_invalid_order(self):
        """Test d'un ordre de dérivée non supporté."""
        with pytest.raises(ConfigurationError):
            cutoff_psi_derivative(0.0, 0.5, 4)


class TestCutoffConfig:
    """Tests pour les poids Phi_j et les milieux m_j."""

    def test_exact_midpoint(self, two_objects):
        """Test de m_2(0) = 0 et de la vitesse max((v1 + v2)/2, v2/2)."""
        cutoff = cutoff_from_configuration(two_objects, 0.5, 10.0)
        assert cutoff.midpoint(2, 0.0) == pytest.approx(0.0)
        assert cutoff.midpoint_paths[0].speed(3.0) == pytest.approx(1.54)
        assert cutoff.midpoint(2, 10.0) == pytest.approx(15.4)
        assert cutoff.centers_source == "exact"

    def test_midpoint_rule_when_left_object_recedes(self):
        """Test de m_2' = x_2'/2 quand (x_1' + x_2')/2 est plus petit."""
        times = np.linspace(0.0, 2.0, 21)
        centers = np.column_stack([-10.0 - 3.0 * times, 10.0 + 1.0 * times])
        cutoff = cutoff_from_centers(times, centers, 0.5)
        assert cutoff.midpoint(2, 2.0) == pytest.approx(1.0)
        assert cutoff.centers_source == "fitted"

    def test_weights(self, grid, two_objects):
        """Test de Phi_1 = 1 et Phi_{J+1} = 0."""
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        assert np.all(cutoff.weight(1, 0.0, grid) == 1.0)
        assert np.all(cutoff.weight(3, 0.0, grid) == 0.0)
        w = cutoff.weight(2, 0.0, grid)
        assert np.all(np.diff(w) >= 0.0)

    @pytest.mark.parametrize("j", [0, 4])
    def test_index_out_of_range(self, grid, two_objects, j):
        """Test d'un indice j hors de [1, J + 1]."""
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        with pytest.raises(ConfigurationError):
            cutoff.weight(j, 0.0, grid)

    def test_path_count_mismatch(self):
        """Test d'un nombre de milieux incohérent."""
        with pytest.raises(ConfigurationError):
            CutoffConfig(sigma=0.5, n_objects=2)

    def test_defaults(self, two_objects, single_soliton):
        """Test de sigma et theta par défaut."""
        assert default_sigma(two_objects) == pytest.approx(0.135)
        assert default_theta(two_objects, 0.135) == pytest.approx(math.sqrt(0.135) / 16)
        assert default_sigma(single_soliton) == pytest.approx(0.5)
        assert not check_sigma_bound(two_objects, 10.0)
        assert check_sigma_bound(two_objects, 0.1)


class TestLocalizedFunctionals:
    """Tests pour M_j, E_j, F_j et H_j."""

    def test_first_index_is_global(self, grid, two_objects):
        """Test de (M_1, E_1, F_1) = (M, E, F)."""
        u = eval_sum(two_objects, 0.0, grid)
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        assert localized_triple(u, cutoff, 1) == conserved_triple(u)
        assert localized_triple(u, cutoff, 3) == Triple(0.0, 0.0, 0.0)

    def test_weight_splits_objects(self, grid, two_objects):
        """Test de M_2 ~ masse du breather pour une troncature raide."""
        u = eval_sum(two_objects, 0.0, grid)
        cutoff = cutoff_from_configuration(two_objects, 2.0)
        breather_mass = mass(eval_object(two_objects.objects[1], 0.0, grid))
        m2 = localized_triple(u, cutoff, 2).mass
        assert m2 == pytest.approx(breather_mass, abs=1e-4)
        assert conserved_triple(u).mass - m2 == pytest.approx(2.0, abs=1e-4)

    def test_lyapunov_matches_combination(self, grid, two_objects):
        """Test de H_j = F_j + 2 (b^2 - a^2) E_j + (a^2 + b^2)^2 M_j."""
        u = eval_sum(two_objects, 0.0, grid)
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        triple = localized_triple(u, cutoff, 2)
        expected = triple.f_second + 2 * (4.0 - 0.64) * triple.energy + (4.64 ** 2) * triple.mass
        assert lyapunov(u, cutoff, 2, 0.8, 2.0) == pytest.approx(expected, rel=1e-12)


class TestTaylor:
    """Tests pour le développement autour de la somme d'objets."""

    def test_mass_remainder_vanishes(self, grid, two_objects):
        """Test du reste nul pour la masse (quadratique exacte)."""
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        p = eval_sum(two_objects, 0.0, grid)
        eps = Field(grid, random_h2(grid, 0.05, seed=11))
        parts = taylor_parts(p, eps, cutoff, 2)
        assert abs(parts.remainder.mass) < 1e-12

    def test_cubic_remainders(self, grid, two_objects):
        """Test de la décroissance cubique des restes de E et F."""
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        p = eval_sum(two_objects, 0.0, grid)
        bump = Field(grid, directed_bump(grid, 0.1, -20.0, 1.0))
        scales = np.array([1.0, 0.5, 0.25])
        rem = [taylor_parts(p, bump * s, cutoff, 1).remainder for s in scales]
        for values in ([abs(r.energy) for r in rem], [abs(r.f_second) for r in rem]):
            slope = np.polyfit(np.log(scales), np.log(values), 1)[0]
            assert slope == pytest.approx(3.0, abs=0.3)

    def test_time_mismatch(self, grid, two_objects):
        """Test de P et eps à des instants différents."""
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        p = eval_sum(two_objects, 0.0, grid)
        with pytest.raises(ConfigurationError):
            taylor_parts(p, grid.zeros(time=1.0), cutoff, 1)


class TestAppendixIdentity:
    """Tests pour les dérivées en temps des fonctionnelles pondérées."""

    def test_constant_weight(self, grid, breather):
        """Test d'un poids constant: les trois dérivées sont nulles."""
        u = eval_object(breather, 0.0, grid)
        rhs = appendix_rhs(u, WeightProfile.constant(grid))
        assert rhs == Triple(0.0, 0.0, 0.0)

    def test_moving_weight_on_exact_soliton(self, grid):
        """Test contre une différence centrée le long du soliton exact."""
        obj = SolitonParams(c=1.0)
        sigma, m0, speed, t0, h = 1.0, 1.0, 0.5, 0.3, 1e-3

        def weighted(t):
            u = eval_object(obj, t, grid).values
            phi = WeightProfile.from_psi(grid, sigma, m0 + speed * t).values
            return np.array([integrate(rho * phi, grid) for rho in localized_densities(u, grid)])

        fd = (-weighted(t0 + 2 * h) + 8 * weighted(t0 + h)
              - 8 * weighted(t0 - h) + weighted(t0 - 2 * h)) / (12 * h)
        rhs = appendix_rhs(eval_object(obj, t0, grid),
                           WeightProfile.from_psi(grid, sigma, m0 + speed * t0, speed))
        assert np.max(np.abs(fd - np.array(rhs))) < 1e-8


class TestFunctionalReport:
    """Tests pour le rapport par instantané."""

    def test_exact_sum(self, grid, two_objects):
        """Test d'un instantané sans perturbation."""
        cutoff = cutoff_from_configuration(two_objects, 0.5)
        u = eval_sum(two_objects, 0.0, grid)
        report = functional_report(u, u, grid.zeros(), cutoff, two_objects)
        assert report.is_finite()
        assert len(report.localized) == 2
        assert report.quadratic_form == (0.0, 0.0)
        assert report.coercivity == (0.0, 0.0)
        assert report.lyapunov[0] == pytest.approx(
            lyapunov_combination(conserved_triple(u), 0.0, 1.0))
        assert report.centers_source == "exact"

    def test_cutoff_mismatch(self, grid, two_objects, single_soliton):
        """Test d'une troncature construite pour un autre nombre d'objets."""
        cutoff = cutoff_from_configuration(single_soliton, 0.5)
        u = eval_sum(two_objects, 0.0, grid)
        with pytest.raises(ConfigurationError):
            functional_report(u, u, grid.zeros(), cutoff, two_objects)
