"""
Configuración de la base de datos del registro de corridas con SQLModel
Soporta SQLite (por defecto) y cualquier URL de SQLAlchemy
"""
from contextlib import contextmanager
from functools import lru_cache
from pathlib import Path

from sqlalchemy.engine import make_url
from sqlalchemy.pool import StaticPool
from sqlmodel import SQLModel, Session, create_engine

from config import RUNS_DATABASE_URL


@lru_cache(maxsize=None)
def get_engine(url: str = RUNS_DATABASE_URL):
    """Crear (una sola vez por URL) el engine del registro"""
    parsed = make_url(url)

    if parsed.drivername.startswith("sqlite"):
        if parsed.database and parsed.database != ":memory:":
            Path(parsed.database).parent.mkdir(parents=True, exist_ok=True)
            return create_engine(url, echo=False, connect_args={"check_same_thread": False})
        # SQLite en memoria: una sola conexión compartida
        return create_engine(
            url,
            echo=False,
            connect_args={"check_same_thread": False},
            poolclass=StaticPool,
        )

    return create_engine(url, echo=False, pool_pre_ping=True)


def create_db_and_tables(url: str = RUNS_DATABASE_URL):
    """Crear todas las tablas en la base de datos"""
    # Registrar los modelos de tabla antes de crear
    import models.run  # noqa: F401

    SQLModel.metadata.create_all(get_engine(url))


@contextmanager
def get_session(url: str = RUNS_DATABASE_URL):
    """Sesión de base de datos para el registro"""
    create_db_and_tables(url)
    with Session(get_engine(url)) as session:
        yield session
