"""
Balayages d'un scénario selon l'amplitude, la séparation ou la résolution.
"""

import csv
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.stats import linregress

from .runner import run
from ..config import PerturbationKind, Scenario, worker_count
from ..exceptions import ConfigurationError, LabError
from ..solutions import BreatherParams, Configuration

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["value", "sup_eps_h2", "amplification", "max_defect", "separation_growth",
                 "passed", "error"]


class SweepAxis(str, Enum):
    AMPLITUDE = "amplitude"
    SEPARATION = "separation"
    RESOLUTION = "resolution"


@dataclass
class SweepResult:
    """Tableau (une ligne par valeur) et pente log-linéaire éventuelle."""

    axis: SweepAxis
    rows: List[Dict[str, Any]] = field(default_factory=list)
    slope: Optional[float] = None
    slope_kind: Optional[str] = None

    def table(self) -> List[List[Any]]:
        return [[row[c] for c in TABLE_COLUMNS] for row in self.rows]


def _place_centers(cfg: Configuration, separation: float) -> Configuration:
    """Centres initiaux espacés de 2D, symétriques autour de l'origine."""
    n = len(cfg.objects)
    moved = []
    for j, o in enumerate(cfg.objects):
        target = (2 * j - (n - 1)) * separation
        if isinstance(o, BreatherParams):
            moved.append(o.model_copy(update={"x2": -target}))
        else:
            moved.append(o.model_copy(update={"x0": target}))
    return Configuration(objects=moved)


def variant(base: Scenario, axis: SweepAxis, value: float) -> Scenario:
    """Scénario dérivé de ``base`` avec ``axis`` fixé à ``value``."""
    data = base.model_dump(mode="json")
    data["name"] = f"{base.name}_{axis.value}_{value:g}"
    if axis == SweepAxis.AMPLITUDE:
        data["perturbation"]["amplitude"] = float(value)
        if value > 0 and base.perturbation.kind == PerturbationKind.NONE:
            data["perturbation"]["kind"] = PerturbationKind.RANDOM_H2.value
    elif axis == SweepAxis.SEPARATION:
        data["separation"] = float(value)
        data["objects"] = _place_centers(base.objects, float(value)).model_dump(mode="json")
        data["grid"] = {"length": None, "points": None}
    elif axis == SweepAxis.RESOLUTION:
        data["grid"]["points"] = int(value)
    return Scenario.model_validate(data)


def _max_defect(summary: Dict[str, Any]) -> float:
    defects = summary.get("max_defects") or {}
    values = [v for per_j in defects.values() for v in per_j.values()]
    return max(values) if values else math.nan


def _run_variant(s: Scenario, axis: SweepAxis, value: float, output_dir: Optional[str]):
    out = os.path.join(output_dir, s.name) if output_dir else None
    try:
        report = run(s, output_dir=out, write=out is not None)
    except LabError as e:
        logger.error(f"Variant {axis.value}={value} failed: {e}")
        return {"value": value, "sup_eps_h2": math.nan, "amplification": math.nan,
                "max_defect": math.nan, "separation_growth": math.nan, "passed": False,
                "error": f"{type(e).__name__}: {e}"}
    summary = report.summary
    growth = summary.get("separation_growth")
    error = "; ".join(e["message"] or e["type"] for e in report.errors) or None
    return {
        "value": value,
        "sup_eps_h2": summary.get("sup_eps_h2", math.nan),
        "amplification": summary.get("amplification", math.nan),
        "max_defect": _max_defect(summary),
        "separation_growth": math.nan if growth is None else growth,
        "passed": report.passed,
        "error": error,
    }


def _slope(axis: SweepAxis, rows: List[Dict[str, Any]]):
    """Pente log-log en amplitude, log-linéaire en séparation."""
    if axis == SweepAxis.AMPLITUDE:
        pts = [(math.log(r["value"]), math.log(r["sup_eps_h2"])) for r in rows
               if r["value"] > 0 and r["sup_eps_h2"] > 0]
        kind = "log-log sup_eps_h2 vs amplitude"
    elif axis == SweepAxis.SEPARATION:
        pts = [(r["value"], math.log(r["max_defect"])) for r in rows
               if np.isfinite(r["max_defect"]) and r["max_defect"] > 0]
        kind = "log max_defect vs separation"
    else:
        return None, None
    if len(pts) < 2:
        return None, kind
    x, y = zip(*pts)
    return float(linregress(x, y).slope), kind


def sweep(base: Scenario, axis, values: Sequence[float], output_dir: Optional[str] = None,
          workers: Optional[int] = None) -> SweepResult:
    """
    Exécute une variante par valeur (pool de threads plafonné par MKDV_LAB_THREADS).
    Une variante en échec est consignée et le balayage continue.

    Raises:
        ConfigurationError: Si l'axe est inconnu ou si les valeurs ne sont pas triées
    """
    try:
        axis = SweepAxis(axis)
    except ValueError as e:
        raise ConfigurationError(f"Unknown sweep axis '{axis}'") from e
    values = [float(v) for v in values]
    if values != sorted(values):
        raise ConfigurationError(f"Sweep values must be sorted, got {values}")
    result = SweepResult(axis=axis)
    if not values:
        return result

    variants = []
    for v in values:
        try:
            variants.append((v, variant(base, axis, v)))
        except Exception as e:
            logger.error(f"Cannot build variant {axis.value}={v}: {e}")
            variants.append((v, e))

    n_workers = worker_count(workers or len(variants))
    logger.info(f"Sweeping {axis.value} over {values} with {n_workers} workers")
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        futures = []
        for v, s in variants:
            if isinstance(s, Scenario):
                futures.append(pool.submit(_run_variant, s, axis, v, output_dir))
            else:
                futures.append(None)
        for (v, s), fut in zip(variants, futures):
            if fut is None:
                result.rows.append({"value": v, "sup_eps_h2": math.nan, "amplification": math.nan,
                                    "max_defect": math.nan, "separation_growth": math.nan,
                                    "passed": False, "error": str(s)})
            else:
                result.rows.append(fut.result())

    result.slope, result.slope_kind = _slope(axis, result.rows)
    if output_dir:
        write_sweep(result, output_dir)
    return result


def write_sweep(result: SweepResult, output_dir: str):
    os.makedirs(output_dir, exist_ok=True)
    with open(os.path.join(output_dir, "sweep.csv"), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(TABLE_COLUMNS)
        writer.writerows(result.table())
    with open(os.path.join(output_dir, "sweep.json"), "w", encoding="utf-8") as f:
        json.dump({"axis": result.axis.value, "rows": result.rows, "slope": result.slope,
                   "slope_kind": result.slope_kind}, f, indent=2, default=float)
    logger.info(f"Wrote sweep table to {output_dir}")
