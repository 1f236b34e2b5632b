"""
Modelo de Experimento - qué reglas correr, cuántos pasos y cómo extraer cadenas
"""
from enum import Enum
from typing import Optional

from sqlmodel import SQLModel, Field

from config import STEPS_FACTOR
from models.machine import tm_space_size


class ModelKind(str, Enum):
    TM = "tm"
    ECA = "eca"


class ExtractionPolicy(str, Enum):
    EXACT_LENGTH = "exact-length"
    ALL_SUBSTRINGS = "all-substrings"
    CENTER_WINDOW = "center-window"
    PREFIX = "prefix"


class StopRule(str, Enum):
    FIXED_STEPS = "fixed-steps"
    UNIFORM_RANDOM_STOP = "uniform-random-stop"


class SampleSchedule(str, Enum):
    """ALL corre todo el espacio; PROGRESSIVE usa a = n * factor"""
    ALL = "all"
    PROGRESSIVE = "progressive"


class ModelSpec(SQLModel):
    """Modelo de computación: TM(s,k) o ECA"""
    kind: ModelKind
    symbols: int = Field(default=2, ge=1)
    states: int = Field(default=2, ge=1)

    @property
    def tag(self) -> str:
        if self.kind == ModelKind.ECA:
            return "eca"
        return f"tm({self.symbols},{self.states})"

    @property
    def space_size(self) -> int:
        if self.kind == ModelKind.ECA:
            return 256
        return tm_space_size(self.symbols, self.states)


class ExperimentSpec(SQLModel):
    """
    Especificación de un experimento sobre un espacio de reglas.

    sample_size None significa todas las reglas.
    """
    model: ModelSpec
    n: int = Field(ge=1)
    steps: Optional[int] = Field(default=None, ge=0)
    sample_size: Optional[int] = Field(default=None, ge=1)
    extraction: ExtractionPolicy = ExtractionPolicy.ALL_SUBSTRINGS
    stop_rule: Optional[StopRule] = None
    seed: int = 0

    def resolved(self) -> "ExperimentSpec":
        """Copia con pasos y regla de parada por defecto resueltos"""
        steps = self.steps if self.steps is not None else STEPS_FACTOR * self.n
        stop_rule = self.stop_rule
        if stop_rule is None:
            # TM a t fijo; ECA con parada aleatoria en [n, t]
            stop_rule = (
                StopRule.UNIFORM_RANDOM_STOP if self.model.kind == ModelKind.ECA
                else StopRule.FIXED_STEPS
            )
        return self.model_copy(update={"steps": steps, "stop_rule": stop_rule})

    @property
    def effective_sample_size(self) -> int:
        return self.sample_size if self.sample_size is not None else self.model.space_size
