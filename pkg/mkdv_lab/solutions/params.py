"""
Modèles de paramètres pour les solitons, les breathers et leurs configurations.
"""

from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SolitonParams(BaseModel):
    """Soliton kappa * Q_c(x - c t - x0)."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["soliton"] = "soliton"
    c: float = Field(..., gt=0, description="Paramètre de forme (= vitesse)")
    kappa: Literal[-1, 1] = Field(1, description="Signe du soliton")
    x0: float = Field(0.0, description="Position initiale du centre")


class BreatherParams(BaseModel):
    """Breather de fréquence alpha, de décroissance beta, de phase x1 et de position x2."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["breather"] = "breather"
    alpha: float = Field(..., gt=0, description="Fréquence")
    beta: float = Field(..., gt=0, description="Forme / taux de décroissance")
    x1: float = Field(0.0, description="Décalage de phase")
    x2: float = Field(0.0, description="Décalage de position")

    @property
    def delta(self) -> float:
        return self.alpha ** 2 - 3.0 * self.beta ** 2

    @property
    def gamma(self) -> float:
        return 3.0 * self.alpha ** 2 - self.beta ** 2


ObjectParams = Annotated[Union[SolitonParams, BreatherParams], Field(discriminator="kind")]


def object_velocity(o: Union[SolitonParams, BreatherParams]) -> float:
    """Vitesse d'un objet: c pour un soliton, beta^2 - 3 alpha^2 pour un breather."""
    if isinstance(o, SolitonParams):
        return o.c
    return o.beta ** 2 - 3.0 * o.alpha ** 2


class Configuration(BaseModel):
    """Liste d'objets rangés par vitesses strictement croissantes."""

    model_config = ConfigDict(frozen=True)

    objects: List[ObjectParams] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_velocity_order(self):
        velocities = [object_velocity(o) for o in self.objects]
        for left, right in zip(velocities, velocities[1:]):
            if not right > left:
                raise ValueError(
                    f"Objects must be sorted by strictly increasing velocity, got {velocities}"
                )
        return self
