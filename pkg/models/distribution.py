"""
Modelo de Distribución D(X) y de clases de complejidad
"""
from typing import Optional

from sqlmodel import SQLModel, Field

from config import SCHEMA_VERSION, TOOL_VERSION
from models.experiment import ExperimentSpec


class DistributionMeta(SQLModel):
    """Procedencia de una distribución"""
    experiment: Optional[ExperimentSpec] = None
    total_count: int = 0
    tool_version: str = TOOL_VERSION
    schema_version: int = SCHEMA_VERSION
    # Distribuciones derivadas (ej: D_N) listan sus fuentes
    sources: list[str] = Field(default_factory=list)
    # Configuración efectiva de la corrida (sin rutas ni workers)
    config: dict = Field(default_factory=dict)


class Distribution(SQLModel):
    """
    Distribución normalizada sobre cadenas binarias de longitud n.

    En una distribución reducida las claves son los representantes
    canónicos de cada clase, `entries` guarda la probabilidad renormalizada
    y `weights` el peso suma/|órbita|.
    """
    n: int
    entries: dict[str, float]
    reduced: bool = False
    weights: Optional[dict[str, float]] = None
    meta: DistributionMeta = Field(default_factory=DistributionMeta)

    @property
    def support(self) -> set[str]:
        return set(self.entries)

    def probability(self, key: str) -> float:
        return self.entries.get(key, 0.0)

    def sorted_keys(self) -> list[str]:
        """Orden descendente por probabilidad, luego orden aritmético"""
        return sorted(self.entries, key=lambda s: (-self.entries[s], int(s, 2)))


class RankedString(SQLModel):
    string: str
    probability: float
    rank: float


class ComplexityClass(SQLModel):
    """Órbita de una cadena bajo {id, sy, co, syco}"""
    canonical: str
    members: list[str]
    weight: float = 0.0
