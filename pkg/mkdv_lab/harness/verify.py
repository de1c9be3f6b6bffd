"""
Suite d'identités vérifiables sur les solutions exactes (aucune intégration en temps).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np
from scipy.stats import linregress
from tabulate import tabulate

from .initial import directed_bump, random_h2
from ..functionals import (
    PSI_THIRD_ORDER_ZONE,
    WeightProfile,
    conserved_triple,
    cutoff_from_configuration,
    cutoff_psi,
    cutoff_psi_complement,
    cutoff_psi_derivative,
    localized_densities,
    lyapunov_combination,
    taylor_parts,
    appendix_rhs,
)
from ..solutions import (
    BreatherParams,
    RESIDUAL_RELATIVE_TOL,
    Configuration,
    SolitonParams,
    elliptic_residual,
    eval_object,
    eval_sum,
    residual_scale,
)
from ..spectral import Field, Grid, integrate, spectral_tail

logger = logging.getLogger(__name__)

# 4096 points sur 100: queue spectrale des breathers beta = 2 sous 1e-12.
VERIFY_GRID = Grid(length=100.0, points=4096)
TAIL_THRESHOLD = 1e-12
SOLITON_SHAPES = (0.5, 1.0, 2.0)
BREATHER_SHAPES = ((1.0, 2.0), (0.8, 2.0), (1.0, 1.0))
TAYLOR_SCALES = (1.0, 0.5, 0.25)
DIFFERENCE_STEP = 1e-3


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    value: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.threshold)


def _elliptic_checks(grid: Grid) -> List[VerifyCheck]:
    checks = []
    for c in SOLITON_SHAPES:
        res = elliptic_residual(SolitonParams(c=c), 0.0, grid)
        checks.append(VerifyCheck(f"elliptic soliton c={c:g}", res, 1e-9))
    for alpha, beta in BREATHER_SHAPES:
        b = BreatherParams(alpha=alpha, beta=beta)
        label = f"a={alpha:g} b={beta:g}"
        tail = spectral_tail(eval_object(b, 0.0, grid).values, grid)
        checks.append(VerifyCheck(f"spectral tail breather {label}", tail, TAIL_THRESHOLD))
        res = elliptic_residual(b, 0.0, grid) / residual_scale(b)
        checks.append(VerifyCheck(f"elliptic breather {label} (relative)", res, RESIDUAL_RELATIVE_TOL))
    return checks


def _anchor_checks(grid: Grid) -> List[VerifyCheck]:
    checks = []
    for c in SOLITON_SHAPES:
        tol = 1e-10 if c == 1.0 else 1e-9
        triple = conserved_triple(eval_object(SolitonParams(c=c), 0.0, grid))
        m, e, f = triple
        expected = (2.0 * c ** 0.5, -(2.0 / 3.0) * c ** 1.5, 0.4 * c ** 2.5)
        for label, got, want in zip("MEF", (m, e, f), expected):
            checks.append(VerifyCheck(f"{label}[Q_c] c={c:g}", abs(got - want), tol))
        h = lyapunov_combination(triple, 0.0, math.sqrt(c))
        checks.append(VerifyCheck(f"H[Q_c] = 16/15 c^5/2, c={c:g}",
                                  abs(h - 16.0 / 15.0 * c ** 2.5), 1e-9))
    return checks


def _psi_checks(sigma: float = 0.5) -> List[VerifyCheck]:
    s = 0.5 * math.sqrt(sigma)
    x = np.linspace(-60.0, 60.0, 4001)
    psi, comp = cutoff_psi(x, sigma), cutoff_psi_complement(x, sigma)
    d1, d2, d3 = (cutoff_psi_derivative(x, sigma, k) for k in (1, 2, 3))
    zone = np.abs(s * x) >= PSI_THIRD_ORDER_ZONE
    slack = 1e-12
    return [
        VerifyCheck("Psi symmetry Psi(x) + Psi(-x) = 1",
                    float(np.max(np.abs(psi + cutoff_psi(-x, sigma) - 1.0))), 1e-15),
        VerifyCheck("Psi range [0, 1]",
                    float(max(-np.min(psi), np.max(psi) - 1.0, 0.0)), 0.0),
        VerifyCheck("Psi' >= 0", float(-np.min(d1)), 0.0),
        VerifyCheck("Psi' <= s min(Psi, 1 - Psi)",
                    float(np.max(d1 - s * np.minimum(psi, comp) * (1.0 + slack))), 0.0),
        VerifyCheck("|Psi''| <= s Psi'",
                    float(np.max(np.abs(d2) - s * d1 * (1.0 + slack))), 0.0),
        VerifyCheck("|Psi'''| <= s^2 Psi'",
                    float(np.max(np.abs(d3) - s * s * d1 * (1.0 + slack))), 0.0),
        VerifyCheck("|Psi'''| <= s |Psi''| for |tanh z| >= 1/2",
                    float(np.max(np.abs(d3[zone]) - s * np.abs(d2[zone]) * (1.0 + slack))), 0.0),
    ]


def _taylor_checks(grid: Grid) -> List[VerifyCheck]:
    cfg = Configuration(objects=[SolitonParams(c=1.0, x0=-20.0),
                                 BreatherParams(alpha=0.8, beta=2.0, x2=-20.0)])
    cutoff = cutoff_from_configuration(cfg, sigma=0.5)
    p = eval_sum(cfg, 0.0, grid)
    noise = Field(grid, random_h2(grid, 0.1, seed=7))
    parts = taylor_parts(p, noise, cutoff, 2)
    checks = [VerifyCheck("mass Taylor remainder (random eps)", abs(parts.remainder.mass), 1e-12)]

    bump = Field(grid, directed_bump(grid, 0.1, -20.0, 1.0))
    energies, seconds = [], []
    for scale in TAYLOR_SCALES:
        r = taylor_parts(p, bump * scale, cutoff, 1).remainder
        energies.append(abs(r.energy))
        seconds.append(abs(r.f_second))
    logs = np.log(TAYLOR_SCALES)
    for label, values in (("energy", energies), ("F", seconds)):
        slope = linregress(logs, np.log(values)).slope
        checks.append(VerifyCheck(f"{label} Taylor remainder cubic slope", abs(slope - 3.0), 0.3))
    return checks


def _five_point(func: Callable[[float], float], t: float, h: float) -> float:
    return (-func(t + 2 * h) + 8 * func(t + h) - 8 * func(t - h) + func(t - 2 * h)) / (12 * h)


def _appendix_checks(grid: Grid, sigma: float = 1.0) -> List[VerifyCheck]:
    """Dérivée temporelle des fonctionnelles localisées d'une solution exacte, poids mobile."""
    checks = []
    t0, m0, speed = 0.3, 1.0, 0.5
    for label, obj in (("soliton", SolitonParams(c=1.0)),
                       ("breather", BreatherParams(alpha=1.0, beta=2.0))):
        def localized(t: float, k: int) -> float:
            u = eval_object(obj, t, grid).values
            phi = WeightProfile.from_psi(grid, sigma, m0 + speed * t).values
            return integrate(localized_densities(u, grid)[k] * phi, grid)

        weight = WeightProfile.from_psi(grid, sigma, m0 + speed * t0, speed)
        rhs = appendix_rhs(eval_object(obj, t0, grid), weight)
        for k, name in enumerate(("M", "E", "F")):
            fd = _five_point(lambda t: localized(t, k), t0, DIFFERENCE_STEP)
            err = abs(fd - rhs[k]) / max(1.0, abs(rhs[k]))
            checks.append(VerifyCheck(f"d/dt {name}_psi {label} (moving weight)", err, 1e-6))
    return checks


def run_identity_suite(grid: Grid = VERIFY_GRID) -> List[VerifyCheck]:
    """Exécute toutes les identités; chaque échec est journalisé."""
    checks = (_elliptic_checks(grid) + _anchor_checks(grid) + _psi_checks()
              + _taylor_checks(grid) + _appendix_checks(grid))
    for check in checks:
        if not check.passed:
            logger.error(f"Identity '{check.name}' failed: {check.value:.3e} > {check.threshold:.1e}")
    logger.info(f"Identity suite: {sum(c.passed for c in checks)}/{len(checks)} passed")
    return checks


def format_checks(checks: List[VerifyCheck]) -> str:
    rows = [[c.name, f"{c.value:.3e}", f"{c.threshold:.1e}", "PASS" if c.passed else "FAIL"]
            for c in checks]
    return tabulate(rows, headers=["check", "value", "threshold", "pass"], tablefmt="github")
