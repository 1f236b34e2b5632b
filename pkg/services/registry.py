"""
Servicio de Registro de Corridas
Guarda una fila por artefacto escrito (ruta + SHA-256) para poder rastrear
qué configuración produjo cada archivo
"""
import logging
from pathlib import Path
from typing import List, Optional

from sqlmodel import Session, select

from config import TOOL_VERSION
from models.run import RunRecord
from services.storage import digest

logger = logging.getLogger(__name__)


class RunRegistry:
    """Acceso al registro de corridas"""

    def __init__(self, db: Session):
        self.db = db

    def record(
        self,
        command: str,
        model: str,
        path: Path,
        seed: int,
        n: Optional[int] = None,
        sample_size: Optional[int] = None,
    ) -> RunRecord:
        """Registrar un artefacto ya escrito en disco"""
        entry = RunRecord(
            command=command,
            model=model,
            n=n,
            seed=seed,
            sample_size=sample_size,
            path=str(path),
            digest=digest(path),
            tool_version=TOOL_VERSION,
        )
        self.db.add(entry)
        self.db.commit()
        self.db.refresh(entry)
        logger.debug("Registrado %s (%s)", entry.path, entry.digest[:12])
        return entry

    def list_runs(self, limit: int = 20) -> List[RunRecord]:
        """Corridas más recientes primero"""
        statement = select(RunRecord).order_by(RunRecord.id.desc()).limit(limit)
        return list(self.db.exec(statement).all())

    def find_by_digest(self, value: str) -> List[RunRecord]:
        """Corridas que produjeron exactamente esos bytes"""
        statement = select(RunRecord).where(RunRecord.digest == value).order_by(RunRecord.id)
        return list(self.db.exec(statement).all())
