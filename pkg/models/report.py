"""
Modelos de resultados estadísticos: significancia, comparación, naturalidad
"""
from enum import Enum
from typing import Optional

from sqlmodel import SQLModel, Field

from models.distribution import Distribution
from models.experiment import ModelSpec


class Tail(str, Enum):
    ONE_SIDED = "one-sided"
    TWO_SIDED = "two-sided"


class PermutationMode(str, Enum):
    AUTO = "auto"
    EXACT = "exact"
    MONTE_CARLO = "monte-carlo"


class Method(str, Enum):
    EXACT_PERMUTATION = "exact-permutation"
    MONTE_CARLO = "monte-carlo"


class Verdict(str, Enum):
    NOT_SIGNIFICANT = "not-significant"
    SIGNIFICANT = "significant"
    HIGHLY_SIGNIFICANT = "highly-significant"


class RankVector(SQLModel):
    """Rangos (fraccionarios si hay empates) y sus etiquetas"""
    ranks: list[float]
    labels: list[str]


class SignificanceResult(SQLModel):
    p_value: float
    method: Method
    tail: Tail
    samples: Optional[int] = None
    verdict: Verdict


class CorrelationRow(SQLModel):
    """
    Fila del reporte para una longitud n.

    Una fila incomparable (menos de 2 clases compartidas o correlación
    indefinida) deja los campos estadísticos en None y explica en `note`.
    """
    n: int
    elements: int
    spearman: Optional[float] = None
    significance: Optional[SignificanceResult] = None
    pearson: Optional[float] = None
    note: Optional[str] = None

    @property
    def comparable(self) -> bool:
        return self.spearman is not None and self.significance is not None


class CorrelationReport(SQLModel):
    rows: list[CorrelationRow] = Field(default_factory=list)
    meta: dict = Field(default_factory=dict)


class MonotonyVerdict(SQLModel):
    c: float
    elements: int
    spearman: float
    p_value: float
    preserved_fraction: float
    verdict: bool


class NaturalnessLabel(str, Enum):
    NATURAL = "natural"
    QUASI = "quasi"
    NOT_NATURAL = "not-natural"


class NaturalnessEvidence(SQLModel):
    n: int
    elements: int
    spearman: Optional[float] = None
    p_value: Optional[float] = None
    preserved_fraction: Optional[float] = None
    passed: Optional[bool] = None
    informative: bool = False
    note: Optional[str] = None


class NaturalnessVerdict(SQLModel):
    c: float
    label: NaturalnessLabel
    # Grado de naturalidad: rho medio y fracción concordante media
    degree_spearman: Optional[float] = None
    degree_preserved: Optional[float] = None
    evidence: list[NaturalnessEvidence] = Field(default_factory=list)

    @property
    def flagged(self) -> list[NaturalnessEvidence]:
        return [e for e in self.evidence if e.informative and not e.passed]


class DistributionSequence(SQLModel):
    """D_n para n en [n_min, n_max], ya reducidas. Sin modelo si es derivada (D_N)"""
    model: Optional[ModelSpec] = None
    per_n: dict[int, Distribution] = Field(default_factory=dict)

    @property
    def lengths(self) -> list[int]:
        return sorted(self.per_n)


class ConvergenceStep(SQLModel):
    n: int
    order_distance: Optional[float] = None
    value_distance: Optional[float] = None
    elements: int = 0

