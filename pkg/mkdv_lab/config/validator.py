"""
Configuration et validation des scénarios.
"""

from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..solutions import Configuration, center, velocity


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class SchemeName(str, Enum):
    ETDRK4 = "etdrk4"
    IFRK4 = "ifrk4"


class PerturbationKind(str, Enum):
    NONE = "none"
    RANDOM_H2 = "random_h2"
    DIRECTED = "directed"


class GridConfig(BaseModel):
    """Grille imposée; ``None`` laisse le runner dimensionner la boîte."""

    length: Optional[float] = Field(default=None, gt=0)
    points: Optional[int] = Field(default=None, ge=16)

    @field_validator("points")
    @classmethod
    def _power_of_two(cls, v):
        if v is not None and (v & (v - 1)) != 0:
            raise ValueError(f"points must be a power of two, got {v}")
        return v


class SolverConfig(BaseModel):
    """Configuration du solveur en temps."""

    model_config = ConfigDict(frozen=True)

    dt: float = Field(default=1e-3, gt=0)
    t_final: float = Field(default=10.0, gt=0)
    dealias: float = Field(default=2.0 / 3.0, gt=0, le=1)
    scheme: SchemeName = Field(default=SchemeName.ETDRK4)
    snapshot_stride: int = Field(default=100, ge=1)
    direction: Literal[1, -1] = Field(default=1, description="-1 pour remonter le temps")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    @model_validator(mode="after")
    def _check_step_count(self):
        n = self.n_steps
        if n < 1 or abs(n * self.dt - self.t_final) > 1e-9 * max(self.t_final, 1.0):
            raise ValueError(f"t_final={self.t_final} is not a multiple of dt={self.dt}")
        if n % self.snapshot_stride != 0:
            raise ValueError(
                f"{n} steps are not a multiple of snapshot_stride={self.snapshot_stride}"
            )
        return self


class CutoffSettings(BaseModel):
    """Réglages de la troncature et des fonctionnelles localisées."""

    sigma: Optional[float] = Field(default=None, gt=0, description="Défaut: min(zeta, beta^2)/2")
    omega1: float = Field(default=0.1, gt=0, lt=1)
    omega2: float = Field(default=0.1, gt=0, lt=1)
    use_fitted_centers: bool = Field(default=True)


class PerturbationConfig(BaseModel):
    """Perturbation initiale de norme H2 exactement égale à ``amplitude``."""

    kind: PerturbationKind = Field(default=PerturbationKind.NONE)
    amplitude: float = Field(default=0.0, ge=0)
    seed: int = Field(default=0, ge=0)
    bandwidth: float = Field(default=0.125, gt=0, le=0.5,
                             description="Fraction de points retenue en nombres d'onde")
    bump_center: float = Field(default=0.0)
    bump_width: float = Field(default=1.0, gt=0)


class AcceptanceConfig(BaseModel):
    """Seuils des vérifications d'acceptation d'un run."""

    enabled: bool = Field(default=True)
    amplification_max: float = Field(default=20.0, gt=0,
                                     description="sup ||eps||_H2 <= amplification_max * a")
    baseline_eps_max: float = Field(default=1e-6, gt=0, description="sup ||eps||_H2 quand a = 0")
    parameter_drift_max: float = Field(default=1e-7, gt=0)
    defect_max: float = Field(default=1e-8, gt=0)
    growth_ratio_max: float = Field(default=0.5, gt=0)


class Scenario(BaseModel):
    """Scénario complet: objets, perturbation, solveur, grille et sorties."""

    schema_version: Literal[1] = 1
    name: str = Field(default="scenario")
    objects: Configuration
    separation: float = Field(..., gt=0, description="D: écart initial >= 2D entre centres")
    perturbation: PerturbationConfig = Field(default_factory=PerturbationConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    cutoff: CutoffSettings = Field(default_factory=CutoffSettings)
    theta: Optional[float] = Field(default=None, gt=0)
    fit_tolerance: float = Field(default=1e-10, gt=0)
    fit_max_iter: int = Field(default=50, ge=1)
    outputs: str = Field(default="runs")
    write_snapshots: bool = Field(default=False)
    checks: AcceptanceConfig = Field(default_factory=AcceptanceConfig)

    @model_validator(mode="after")
    def _check_hypotheses(self):
        objs = self.objects.objects
        if not objs:
            raise ValueError("A scenario needs at least one object")
        centers = [center(o, 0.0) for o in objs]
        for left, right in zip(centers, centers[1:]):
            if right - left < 2.0 * self.separation - 1e-9:
                raise ValueError(
                    f"Initial centers {centers} violate the gap 2D = {2.0 * self.separation}"
                )
        if len(objs) >= 2 and not velocity(objs[1]) > 0:
            raise ValueError("The second object must travel to the right (v2 > 0)")
        return self
