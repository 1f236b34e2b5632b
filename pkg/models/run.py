"""
Modelo de Corrida - configuración efectiva y registro de artefactos
"""
from datetime import datetime
from pathlib import Path
from typing import Optional

import pytz
from sqlmodel import SQLModel, Field

from config import (
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    NATURALNESS_C,
    RESULTS_DIR,
    RUNS_DATABASE_URL,
    TIMEZONE,
    TOOL_VERSION,
)
from models.experiment import ExtractionPolicy, ModelKind, SampleSchedule, StopRule
from models.report import Tail


def get_now() -> datetime:
    """Obtener fecha/hora actual en la zona horaria configurada"""
    tz = pytz.timezone(TIMEZONE)
    return datetime.now(tz)


class RunConfig(SQLModel):
    """
    Configuración efectiva de una invocación del CLI.

    Precedencia: flag > archivo de configuración > valores por defecto.
    """
    model: ModelKind = ModelKind.TM
    symbols: int = Field(default=2, ge=1)
    states: int = Field(default=2, ge=1)
    n_min: int = Field(default=2, ge=1)
    n_max: int = Field(default=12, ge=1)
    steps: Optional[int] = Field(default=None, ge=0)
    extraction: ExtractionPolicy = ExtractionPolicy.ALL_SUBSTRINGS
    stop_rule: Optional[StopRule] = None
    sample_size: Optional[int] = Field(default=None, ge=1)
    schedule: SampleSchedule = SampleSchedule.ALL
    seed: int = DEFAULT_SEED
    tail: Tail = Tail.ONE_SIDED
    c: float = NATURALNESS_C
    workers: int = Field(default=DEFAULT_WORKERS, ge=1)
    output: Path = RESULTS_DIR
    registry_url: str = RUNS_DATABASE_URL

    def provenance(self) -> dict:
        """Parte de la configuración que determina los bytes de salida"""
        data = self.model_dump(mode="json", exclude={"output", "workers", "registry_url"})
        data["tool_version"] = TOOL_VERSION
        return data


class RunRecord(SQLModel, table=True):
    """Una fila por artefacto escrito"""
    __tablename__ = "runs"

    id: Optional[int] = Field(default=None, primary_key=True)
    command: str = Field(max_length=40)
    model: str = Field(max_length=40, index=True)
    n: Optional[int] = Field(default=None)
    seed: int
    sample_size: Optional[int] = Field(default=None)
    path: str = Field(max_length=500)
    digest: str = Field(max_length=64, index=True)
    tool_version: str = Field(default=TOOL_VERSION, max_length=20)
    created_at: datetime = Field(default_factory=get_now)
