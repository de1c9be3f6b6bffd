"""
Pipeline d'un scénario: données initiales, intégration, modulation, fonctionnelles, rapport.
"""

import csv
import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .initial import build_initial
from ..config import Scenario, SolverConfig
from ..exceptions import IntegrationError, LabError, RetryExhaustedError
from ..functionals import (
    CutoffConfig,
    FunctionalReport,
    check_sigma_bound,
    cutoff_from_centers,
    cutoff_from_configuration,
    default_sigma,
    default_theta,
    functional_report,
    localized_densities,
)
from ..integrator import Trajectory, check_stability, integrate, write_snapshots
from ..modulation import ModulationTrack, local_epsilon_weight, theorem_distance, track
from ..solutions import (
    BreatherParams,
    Configuration,
    center,
    decay_rate,
    eval_sum,
    frame_shift,
    lyapunov_parameters,
    required_box_length,
    separation_constants,
    translate,
)
from ..spectral import Field, Grid, integrate as quad, spectral_tail
from ..utils import MetricsCollector, retry_on_exception

logger = logging.getLogger(__name__)

BASE_LENGTH = 100.0
BASE_POINTS = 2048
MAX_POINTS = 2 ** 16
# Queue spectrale relative admise au-delà de la coupure de déaliasage.
SPECTRAL_TAIL_TOL = 1e-12
TAIL_SAMPLES = 8
MAX_DT_HALVINGS = 4
# Recul admis des écarts entre centres ajustés quand a = 0.
GROWTH_SLACK = 1e-6
SERIES_FILE = "series.csv"
SUMMARY_FILE = "summary.json"
SNAPSHOT_FILE = "snapshots.bin"


def param_names(cfg: Configuration) -> List[str]:
    """Noms des paramètres modulés dans l'ordre de la configuration."""
    names = []
    for i, o in enumerate(cfg.objects, start=1):
        pair = ("x1", "x2") if isinstance(o, BreatherParams) else ("c", "x0")
        names += [f"obj{i}_{p}" for p in pair]
    return names


def series_columns(cfg: Configuration) -> List[str]:
    """
    En-tête du CSV: t, eps_h2, paramètres, theorem_distance, puis par indice j
    les fonctionnelles, les défauts de monotonie, puis taux et poids locaux.
    """
    params = param_names(cfg)
    n_obj = len(cfg.objects)
    columns = ["t", "eps_h2"] + params + ["theorem_distance"]
    for j in range(1, n_obj + 1):
        columns += [f"M_{j}", f"E_{j}", f"F_{j}", f"H_{j}", f"Q_{j}", f"coercivity_{j}"]
    for j in range(1, n_obj + 1):
        columns += [f"dM_{j}", f"dE_{j}", f"dF_{j}"]
    columns += [f"rate_{p}" for p in params]
    columns += [f"local_eps_{i}" for i in range(1, n_obj + 1)]
    return columns


@dataclass
class StabilityReport:
    """Série temporelle, résumé et contrôles d'acceptation d'un run."""

    name: str
    columns: List[str]
    rows: List[List[float]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    errors: List[Dict[str, Any]] = field(default_factory=list)
    output_dir: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.errors and all(c["passed"] for c in self.checks.values())

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([row[k] for row in self.rows])


def _tail_over_period(cfg: Configuration, grid: Grid, dealias: float) -> float:
    # Les breathers changent de forme avec la période pi / (alpha (alpha^2 + beta^2)).
    periods = [math.pi / (o.alpha * (o.alpha ** 2 + o.beta ** 2))
               for o in cfg.objects if isinstance(o, BreatherParams)]
    times = [0.0]
    if periods:
        times = [k * max(periods) / TAIL_SAMPLES for k in range(TAIL_SAMPLES)]
    return max(spectral_tail(eval_sum(cfg, t, grid).values, grid, dealias) for t in times)


def resolve_grid(s: Scenario) -> Grid:
    """
    Grille du scénario.

    À défaut, length = 100 * 2^n avec n minimal tel que la boîte contienne la
    trajectoire et ses queues, et points part de 2048 * 2^n puis double tant que
    la queue spectrale au-delà de la coupure de déaliasage dépasse
    ``SPECTRAL_TAIL_TOL`` (sur une période interne des breathers).
    """
    needed = required_box_length(s.objects, s.solver.t_final)
    if s.grid.length is not None:
        length = s.grid.length
        n = max(0, math.ceil(math.log2(length / BASE_LENGTH)))
    else:
        n = 0
        while BASE_LENGTH * 2 ** n < needed:
            n += 1
        length = BASE_LENGTH * 2 ** n
    if length < needed:
        logger.warning(f"Box length {length} is below the required {needed:.1f}; tails may wrap")
    if s.grid.points:
        return Grid(length=length, points=s.grid.points)

    cfg = translate(s.objects, frame_shift(s.objects, s.solver.t_final))
    points = BASE_POINTS * 2 ** n
    tail = _tail_over_period(cfg, Grid(length, points), s.solver.dealias)
    while tail > SPECTRAL_TAIL_TOL and points < MAX_POINTS:
        points *= 2
        tail = _tail_over_period(cfg, Grid(length, points), s.solver.dealias)
    if tail > SPECTRAL_TAIL_TOL:
        logger.warning(f"Spectral tail {tail:.2e} above {SPECTRAL_TAIL_TOL} at N={points}")
    logger.debug(f"Resolved N={points} on L={length} (spectral tail {tail:.2e})")
    return Grid(length=length, points=points)


@retry_on_exception(max_attempts=MAX_DT_HALVINGS + 1, exceptions=IntegrationError)
def _stable_solver(solver: SolverConfig, grid: Grid, u0: Field, attempt: int = 0) -> SolverConfig:
    factor = 2 ** attempt
    cfg = solver if attempt == 0 else solver.model_copy(
        update={"dt": solver.dt / factor, "snapshot_stride": solver.snapshot_stride * factor}
    )
    if not check_stability(cfg, grid, u0):
        raise IntegrationError(f"dt={cfg.dt} outside the stability envelope")
    return cfg


def calibrate_solver(solver: SolverConfig, grid: Grid, u0: Field) -> SolverConfig:
    """
    Divise dt par deux (instants de sauvegarde conservés) jusqu'à la stabilité.

    Raises:
        IntegrationError: Si aucun pas jusqu'à dt / 2^MAX_DT_HALVINGS ne convient
    """
    try:
        cfg = _stable_solver(solver, grid, u0)
    except RetryExhaustedError as e:
        smallest = solver.dt / 2 ** MAX_DT_HALVINGS
        raise IntegrationError(
            f"No dt down to {smallest} fits the stability envelope", step_index=0, time=0.0
        ) from e
    if cfg.dt != solver.dt:
        logger.info(f"Tightened dt from {solver.dt} to {cfg.dt}")
    return cfg


def _record_error(report: StabilityReport, stage: str, error: Exception):
    entry = {"stage": stage, "type": type(error).__name__, "message": str(error),
             "time": getattr(error, "time", None)}
    report.errors.append(entry)
    logger.error(f"Stage {stage} failed: {error}")


def tail_leaks(cfg: Configuration, cutoff: CutoffConfig, grid: Grid,
               omegas: Tuple[float, float]) -> List[Tuple[float, float, float]]:
    """
    Hausse admissible de (M_j, E_j + omega1 M_j, F_j + omega2 M_j) quand eps = 0.

    À t = 0, les objets j..N (P_R) laissent une partie de leur masse sous 1 - Phi_j
    et les objets 1..j-1 (P_L) une partie sous Phi_j; en s'écartant du point
    milieu, ils peuvent au plus rendre ces queues:
    fuite_M = int rho_M(P_R) (1 - Phi_j) et, pour E et F,
    2 int |rho(P_R)| (1 - Phi_j) + 2 int |rho(P_L)| Phi_j + omega fuite_M.
    """
    out = [(0.0, 0.0, 0.0)]
    for j in range(2, len(cfg.objects) + 1):
        phi = cutoff.weight(j, 0.0, grid)
        right = localized_densities(
            eval_sum(Configuration(objects=cfg.objects[j - 1:]), 0.0, grid).values, grid)
        left = localized_densities(
            eval_sum(Configuration(objects=cfg.objects[:j - 1]), 0.0, grid).values, grid)
        leak_m = quad(right[0] * (1.0 - phi), grid)
        leak_e = 2.0 * quad(np.abs(right[1]) * (1.0 - phi) + np.abs(left[1]) * phi, grid)
        leak_f = 2.0 * quad(np.abs(right[2]) * (1.0 - phi) + np.abs(left[2]) * phi, grid)
        out.append((leak_m, leak_e + omegas[0] * leak_m, leak_f + omegas[1] * leak_m))
        logger.debug(f"Tail leaks at j={j}: M={leak_m:.3e}, E={leak_e:.3e}, F={leak_f:.3e}")
    return out


def _midpoint_margin(cfg: Configuration, cutoff: CutoffConfig, mod: ModulationTrack,
                     separation: float, zeta: float) -> float:
    """min_t,j de x_j - m_j et m_j - x_{j-1} moins (D/2 + zeta t), centres ajustés."""
    margin = math.inf
    centers = mod.centers()
    for row, t in zip(centers, mod.times):
        floor = 0.5 * separation + zeta * t
        for j in range(2, len(cfg.objects) + 1):
            m = cutoff.midpoint(j, t)
            margin = min(margin, row[j - 1] - m - floor, m - row[j - 2] - floor)
    return margin


def separation_growth(mod: ModulationTrack, tau: float) -> float:
    """min_t,j de (x_j - x_{j-1})(t) - (x_j - x_{j-1})(0) - tau t, centres ajustés."""
    centers = mod.centers()
    if centers.shape[1] < 2:
        return math.inf
    gaps = np.diff(centers, axis=1)
    growth = gaps - gaps[0] - tau * (np.asarray(mod.times) - mod.times[0])[:, None]
    return float(np.min(growth))


def _check(value: float, threshold: float, passed: bool) -> Dict[str, Any]:
    return {"value": float(value), "threshold": float(threshold), "passed": bool(passed)}


def _assemble_rows(report: StabilityReport, cfg: Configuration, traj: Trajectory,
                   mod: ModulationTrack, reports: List[FunctionalReport],
                   omegas: Tuple[float, float]):
    n_obj = len(cfg.objects)
    by_time = {s.time: s for s in traj.snapshots}
    first = reports[0] if reports else None
    params = mod.parameters()
    for k, (result, fr) in enumerate(zip(mod.results, reports)):
        u = by_time[result.time]
        row = [result.time, result.h2_of_epsilon] + list(params[k])
        row.append(theorem_distance(u, result.params, cfg))
        for j in range(n_obj):
            m, e, f = fr.localized[j]
            row += [m, e, f, fr.lyapunov[j], fr.quadratic_form[j], fr.coercivity[j]]
        for j in range(n_obj):
            m, e, f = fr.localized[j]
            m0, e0, f0 = first.localized[j]
            row += [m - m0, (e + omegas[0] * m) - (e0 + omegas[0] * m0),
                    (f + omegas[1] * m) - (f0 + omegas[1] * m0)]
        row += list(mod.parameter_rates[k])
        row += [local_epsilon_weight(result.epsilon, center(o, result.time), decay_rate(o))
                for o in result.params.objects]
        report.rows.append([float(v) for v in row])


def _summarize(report: StabilityReport, s: Scenario, cfg: Configuration, grid: Grid,
               solver: SolverConfig, shift: float, sigma: float, theta: float,
               cutoff: Optional[CutoffConfig], mod: Optional[ModulationTrack],
               allowances: List[Tuple[float, float, float]]):
    consts = separation_constants(cfg)
    a = s.perturbation.amplitude
    n_obj = len(cfg.objects)
    summary = report.summary
    summary.update({
        "scenario": s.model_dump(mode="json"),
        "grid": {"length": grid.length, "points": grid.points},
        "solver": solver.model_dump(mode="json"),
        "frame_shift": shift,
        "sigma": sigma,
        "theta": theta,
        "beta": consts.beta,
        "tau": consts.tau if math.isfinite(consts.tau) else None,
        "zeta": consts.zeta if math.isfinite(consts.zeta) else None,
        "centers_source": cutoff.centers_source if cutoff else None,
        "guard_bound": bool(mod.guard_bound) if mod else False,
        "truncated_at": mod.truncated_at if mod else None,
        "modulation_failure": mod.failure if mod else None,
    })
    if not report.rows:
        return

    t = report.column("t")
    eps = report.column("eps_h2")
    sup_eps = float(np.max(eps))
    envelope = a + math.exp(-theta * s.separation)
    late = t >= 0.5 * s.solver.t_final
    slope = float(np.polyfit(t[late], eps[late], 1)[0]) if np.count_nonzero(late) >= 2 else 0.0
    defects = {}
    for j in range(1, n_obj + 1):
        defects[str(j)] = {
            key: float(max(np.max(report.column(f"{key}_{j}")), 0.0)) for key in ("dM", "dE", "dF")
        }
    params = np.array([row[2:2 + 2 * n_obj] for row in report.rows])
    drift = float(np.max(np.abs(params - params[0]))) if params.size else 0.0

    # constante C de |z'| <= C (poids local de eps + exp(-beta D / 8))
    rate_cols = [report.column(f"rate_{p}") for p in param_names(cfg)]
    floor = math.exp(-consts.beta * s.separation / 8.0)
    ratios = []
    for i in range(n_obj):
        weight = report.column(f"local_eps_{i + 1}") + floor
        for r in rate_cols[2 * i:2 * i + 2]:
            ratios.append(float(np.max(np.abs(r) / weight)))

    summary.update({
        "sup_eps_h2": sup_eps,
        "amplification": sup_eps / envelope,
        "envelope": envelope,
        "sup_theorem_distance": float(np.max(report.column("theorem_distance"))),
        "late_growth_slope": slope,
        "max_defects": defects,
        "tail_allowances": {str(j + 1): list(v) for j, v in enumerate(allowances)},
        "parameter_drift": drift,
        "rate_constant": max(ratios) if ratios else 0.0,
        "lyapunov_parameters": [list(lyapunov_parameters(o)) for o in cfg.objects],
        "separation_growth": (separation_growth(mod, consts.tau)
                              if mod is not None and n_obj >= 2 else None),
    })


def _evaluate_checks(report: StabilityReport, s: Scenario, cfg: Configuration,
                     cutoff: Optional[CutoffConfig], mod: Optional[ModulationTrack],
                     allowances: List[Tuple[float, float, float]]):
    checks = report.checks
    limits = s.checks
    checks["modulation_complete"] = _check(
        0.0 if mod is None or mod.truncated else 1.0, 1.0,
        mod is not None and not mod.truncated and bool(report.rows),
    )
    if not report.rows:
        return
    summary = report.summary
    sup_eps = summary["sup_eps_h2"]
    a = s.perturbation.amplitude
    if a > 0:
        bound = limits.amplification_max * a
        checks["eps_bound"] = _check(sup_eps, bound, sup_eps <= bound)
        rise = summary["late_growth_slope"] * 0.5 * s.solver.t_final
        checks["no_growth"] = _check(rise, limits.growth_ratio_max * sup_eps,
                                     rise <= limits.growth_ratio_max * sup_eps)
    else:
        checks["eps_baseline"] = _check(sup_eps, limits.baseline_eps_max,
                                        sup_eps <= limits.baseline_eps_max)
        drift = summary["parameter_drift"]
        checks["parameter_constancy"] = _check(drift, limits.parameter_drift_max,
                                               drift <= limits.parameter_drift_max)
        worst, ok = 0.0, True
        for j, values in summary["max_defects"].items():
            allow = allowances[int(j) - 1]
            for key, extra in zip(("dM", "dE", "dF"), allow):
                worst = max(worst, values[key] - extra)
                ok = ok and values[key] <= limits.defect_max + extra
        checks["monotonicity"] = _check(worst, limits.defect_max, ok)
    if len(cfg.objects) >= 2 and cutoff is not None and mod is not None and mod.results:
        zeta = separation_constants(cfg).zeta
        margin = _midpoint_margin(cfg, cutoff, mod, s.separation, zeta)
        checks["midpoint_separation"] = _check(margin, 0.0, margin >= -1e-9)
        growth = summary["separation_growth"]
        slack = GROWTH_SLACK + 10.0 * a * (1.0 + s.solver.t_final)
        checks["separation_growth"] = _check(growth, -slack, growth >= -slack)


def write_report(report: StabilityReport, output_dir: str):
    """Écrit series.csv et summary.json dans ``output_dir``."""
    os.makedirs(output_dir, exist_ok=True)
    with open(os.path.join(output_dir, SERIES_FILE), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([f"{v:.17g}" for v in row])
    payload = dict(report.summary)
    payload["checks"] = report.checks
    payload["errors"] = report.errors
    payload["passed"] = report.passed
    with open(os.path.join(output_dir, SUMMARY_FILE), "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=float)
    report.output_dir = output_dir
    logger.info(f"Wrote report to {output_dir}")


def run(s: Scenario, output_dir: Optional[str] = None, write: bool = True) -> StabilityReport:
    """
    Exécute le scénario: intégration, suivi de modulation, fonctionnelles par
    instantané, résumé et contrôles. Une étape en échec est consignée et le
    rapport partiel est tout de même écrit.
    """
    metrics = MetricsCollector(s.name)
    grid = resolve_grid(s)
    shift = frame_shift(s.objects, s.solver.t_final)
    cfg = translate(s.objects, shift)
    report = StabilityReport(name=s.name, columns=series_columns(cfg))
    sigma = s.cutoff.sigma or default_sigma(cfg)
    check_sigma_bound(cfg, sigma)
    theta = s.theta or default_theta(cfg, sigma)
    omegas = (s.cutoff.omega1, s.cutoff.omega2)
    logger.info(
        f"Running '{s.name}' on L={grid.length}, N={grid.points}, shift={shift:.3f}, "
        f"sigma={sigma:.4g}, theta={theta:.4g}"
    )

    solver = s.solver
    traj: Optional[Trajectory] = None
    mod: Optional[ModulationTrack] = None
    cutoff: Optional[CutoffConfig] = None
    allowances: List[Tuple[float, float, float]] = [(0.0, 0.0, 0.0)] * len(cfg.objects)
    u0: Optional[Field] = None
    try:
        u0 = metrics.run_stage("initial", build_initial, s, grid, shift)
        solver = calibrate_solver(s.solver, grid, u0)
        metrics.count("dt_halvings", round(math.log2(s.solver.dt / solver.dt)))
        traj = metrics.run_stage(
            "integrate", integrate, u0, solver,
            counters=lambda tr: {"steps": solver.n_steps, "snapshots": len(tr.snapshots)},
        )
    except LabError as e:
        _record_error(report, "initial" if u0 is None else "integrate", e)

    if traj is not None:
        try:
            mod = metrics.run_stage(
                "modulate", track, traj, cfg, s.fit_tolerance, s.fit_max_iter,
                counters=lambda m: {"fits": len(m.results),
                                    "newton_iterations": sum(r.iterations for r in m.results)},
            )
            if mod.truncated:
                report.errors.append({"stage": "modulate", "type": "ModulationError",
                                      "message": mod.failure, "time": mod.truncated_at})
        except LabError as e:
            _record_error(report, "modulate", e)

    if mod is not None and mod.results:
        try:
            if s.cutoff.use_fitted_centers and len(mod.results) >= 2:
                cutoff = cutoff_from_centers(mod.times, mod.centers(), sigma)
            else:
                cutoff = cutoff_from_configuration(cfg, sigma, s.solver.t_final)
            by_time = {snap.time: snap for snap in traj.snapshots}

            def _functionals():
                out = []
                for result in mod.results:
                    u = by_time[result.time]
                    p = u - result.epsilon
                    out.append(functional_report(u, p, result.epsilon, cutoff, cfg))
                return out

            reports = metrics.run_stage("functionals", _functionals,
                                        counters=lambda out: {"reports": len(out)})
            allowances = tail_leaks(cfg, cutoff, grid, omegas)
            _assemble_rows(report, cfg, traj, mod, reports, omegas)
        except LabError as e:
            _record_error(report, "functionals", e)

    _summarize(report, s, cfg, grid, solver, shift, sigma, theta, cutoff, mod, allowances)
    if s.checks.enabled:
        _evaluate_checks(report, s, cfg, cutoff, mod, allowances)
    report.summary["stages"] = metrics.summary()

    if write:
        out = output_dir or os.path.join(s.outputs, s.name)
        write_report(report, out)
        if s.write_snapshots and traj is not None:
            write_snapshots(os.path.join(out, SNAPSHOT_FILE), traj.snapshots)
    status = "passed" if report.passed else "FAILED"
    logger.info(f"Run '{s.name}' {status}: {len(report.rows)} rows, {len(report.errors)} errors")
    return report
