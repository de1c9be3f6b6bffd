"""
Fonctionnelles localisées M_j, E_j, F_j, fonctionnelle de Lyapunov H_j,
développement de Taylor autour d'une somme d'objets et identités de variation.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .conservation import Triple, conserved_triple, localized_densities
from .cutoff import CutoffConfig, WeightProfile
from ..exceptions import ConfigurationError, ParameterError
from ..solutions import Configuration, lyapunov_parameters
from ..spectral import Field, Grid, derivative_stack, integrate, weighted_h2_sq

logger = logging.getLogger(__name__)


def _weighted(rhos, weight: np.ndarray, grid: Grid) -> Triple:
    return Triple(*(integrate(rho * weight, grid) for rho in rhos))


def localized_triple(u: Field, cutoff: CutoffConfig, j: int) -> Triple:
    """
    (M_j, E_j, F_j) avec le poids Phi_j(t) à l'instant du champ.

    Raises:
        ConfigurationError: Si j est hors de [1, J + 1]
    """
    cutoff.check_index(j)
    if j == 1:
        return conserved_triple(u)
    if j == cutoff.n_objects + 1:
        return Triple(0.0, 0.0, 0.0)
    weight = cutoff.weight(j, u.time, u.grid)
    return _weighted(localized_densities(u.values, u.grid), weight, u.grid)


def lyapunov_combination(triple: Triple, a: float, b: float) -> float:
    """F + 2 (b^2 - a^2) E + (a^2 + b^2)^2 M."""
    if not b > 0:
        raise ParameterError(f"Lyapunov parameter b must be positive, got b={b}")
    a2, b2 = a * a, b * b
    return triple.f_second + 2.0 * (b2 - a2) * triple.energy + (a2 + b2) ** 2 * triple.mass


def lyapunov(u: Field, cutoff: CutoffConfig, j: int, a: float, b: float) -> float:
    """H_j = F_j + 2 (b^2 - a^2) E_j + (a^2 + b^2)^2 M_j."""
    return lyapunov_combination(localized_triple(u, cutoff, j), a, b)


@dataclass(frozen=True)
class TaylorParts:
    """Parties constante, linéaire, quadratique et reste du développement en epsilon."""

    constant: Triple
    linear: Triple
    quadratic: Triple
    remainder: Triple


def _check_pair(p: Field, eps: Field):
    if p.grid != eps.grid:
        raise ConfigurationError("Profile and perturbation live on different grids")
    if p.time != eps.time:
        raise ConfigurationError(f"Profile time {p.time} differs from perturbation time {eps.time}")


def _weight_for(cutoff: CutoffConfig, j: int, t: float, grid: Grid) -> np.ndarray:
    cutoff.check_index(j)
    return cutoff.weight(j, t, grid)


def taylor_parts(p: Field, eps: Field, cutoff: CutoffConfig, j: int) -> TaylorParts:
    """
    Développement de (M_j, E_j, F_j)(P + eps) autour de P.

    Les parties linéaires et quadratiques sont évaluées par leurs formules explicites;
    le reste est la différence avec la fonctionnelle localisée de P + eps.
    """
    _check_pair(p, eps)
    grid = p.grid
    phi = _weight_for(cutoff, j, p.time, grid)
    P, e = p.values, eps.values
    px, pxx = derivative_stack(P, grid, (1, 2))
    ex, exx = derivative_stack(e, grid, (1, 2))
    P2 = P * P

    constant = _weighted(localized_densities(P, grid), phi, grid)
    linear = _weighted((
        P * e,
        px * ex - P2 * P * e,
        pxx * exx - 5.0 * P * px ** 2 * e - 5.0 * P2 * px * ex + 1.5 * P2 ** 2 * P * e,
    ), phi, grid)
    quadratic = _weighted((
        0.5 * e * e,
        0.5 * ex ** 2 - 1.5 * P2 * e * e,
        0.5 * exx ** 2 - 2.5 * px ** 2 * e * e - 10.0 * P * px * e * ex
        - 2.5 * P2 * ex ** 2 + 3.75 * P2 ** 2 * e * e,
    ), phi, grid)
    full = _weighted(localized_densities(P + e, grid), phi, grid)
    remainder = Triple(*(f - c - l - q for f, c, l, q in zip(full, constant, linear, quadratic)))
    return TaylorParts(constant, linear, quadratic, remainder)


def appendix_rhs(u: Field, weight: WeightProfile) -> Triple:
    """
    Dérivées en temps de 1/2 int u^2 f, int (u_x^2/2 - u^4/4) f et
    int (u_xx^2/2 - 5 u^2 u_x^2 / 2 + u^6/4) f le long d'une solution.

    Pour un poids mobile f(x - m(t)), le terme de transport -m' int rho f' est ajouté.
    """
    grid = u.grid
    v = u.values
    ux, uxx, uxxx = derivative_stack(v, grid, (1, 2, 3))
    v2 = v * v
    ux2, uxx2 = ux * ux, uxx * uxx
    f1, f2, f3 = weight.d1, weight.d2, weight.d3

    rhs_m = integrate((-1.5 * ux2 + 0.75 * v2 * v2) * f1 + 0.5 * v2 * f3, grid)
    rhs_e = integrate(
        (-0.5 * (uxx + v2 * v) ** 2 - uxx2 + 3.0 * v2 * ux2) * f1 + 0.5 * ux2 * f3, grid
    )
    rhs_f = integrate(
        (
            -1.5 * uxxx ** 2
            + 9.0 * uxx2 * v2
            + 15.0 * ux2 * v * uxx
            + 0.5625 * v2 ** 4
            + 0.25 * ux2 * ux2
            + 1.5 * uxx * v2 * v2 * v
            - 11.25 * v2 * v2 * ux2
        ) * f1
        + 5.0 * v2 * ux * uxx * f2
        + 0.5 * uxx2 * f3,
        grid,
    )
    if weight.speed:
        rhos = localized_densities(v, grid)
        rhs_m, rhs_e, rhs_f = (
            rhs - weight.speed * integrate(rho * f1, grid)
            for rhs, rho in zip((rhs_m, rhs_e, rhs_f), rhos)
        )
    return Triple(rhs_m, rhs_e, rhs_f)


@dataclass(frozen=True)
class FunctionalReport:
    """Instantané des fonctionnelles globales et localisées (indices j = 1 .. J)."""

    time: float
    mass: float
    energy: float
    f_second: float
    localized: Tuple[Triple, ...]
    lyapunov: Tuple[float, ...]
    quadratic_parts: Tuple[Triple, ...]
    quadratic_form: Tuple[float, ...]
    coercivity: Tuple[float, ...]
    centers_source: str = "exact"

    def is_finite(self) -> bool:
        values = [self.time, self.mass, self.energy, self.f_second]
        values += [x for t in self.localized for x in t]
        values += list(self.lyapunov) + list(self.quadratic_form) + list(self.coercivity)
        values += [x for t in self.quadratic_parts for x in t]
        return bool(np.all(np.isfinite(values)))


def functional_report(u: Field, p: Field, eps: Field, cutoff: CutoffConfig,
                      cfg: Configuration, centers_source: Optional[str] = None) -> FunctionalReport:
    """
    Évalue M, E, F, (M_j, E_j, F_j), H_j et la forme quadratique Q_j de eps.

    Les paramètres (a_j, b_j) sont ceux de ``cfg`` (configuration initiale).
    Le ratio de coercivité Q_j / int (eps^2 + eps_x^2 + eps_xx^2) Phi_j est
    enregistré tel quel.
    """
    if len(cfg.objects) != cutoff.n_objects:
        raise ConfigurationError(
            f"Cutoff built for {cutoff.n_objects} objects, configuration has {len(cfg.objects)}"
        )
    total = conserved_triple(u)
    localized, lyap, quad_parts, quad_form, coercivity = [], [], [], [], []
    for j in range(1, cutoff.n_objects + 1):
        a, b = lyapunov_parameters(cfg.objects[j - 1])
        triple = total if j == 1 else localized_triple(u, cutoff, j)
        localized.append(triple)
        lyap.append(lyapunov_combination(triple, a, b))
        parts = taylor_parts(p, eps, cutoff, j)
        quad_parts.append(parts.quadratic)
        q = lyapunov_combination(parts.quadratic, a, b)
        quad_form.append(q)
        norm = weighted_h2_sq(eps, cutoff.weight(j, eps.time, eps.grid))
        coercivity.append(q / norm if norm > 0 else 0.0)
    report = FunctionalReport(
        time=u.time,
        mass=total.mass,
        energy=total.energy,
        f_second=total.f_second,
        localized=tuple(localized),
        lyapunov=tuple(lyap),
        quadratic_parts=tuple(quad_parts),
        quadratic_form=tuple(quad_form),
        coercivity=tuple(coercivity),
        centers_source=centers_source or cutoff.centers_source,
    )
    if not report.is_finite():
        logger.warning(f"Functional report at t={u.time} contains non-finite entries")
    return report
