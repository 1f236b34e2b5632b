"""
Utilidades compartidas por los subcomandos: flags comunes, configuración
efectiva y registro de artefactos
"""
import argparse
import json
import logging
from pathlib import Path

from database import get_session
from errors import StorageError
from models.experiment import ExtractionPolicy, ModelKind, SampleSchedule, StopRule
from models.report import PermutationMode, Tail
from models.run import RunConfig
from services.registry import RunRegistry

logger = logging.getLogger(__name__)


def add_model_flags(parser: argparse.ArgumentParser):
    # SUPPRESS: solo los flags presentes sobrescriben el archivo de configuración
    parser.add_argument("--model", choices=[m.value for m in ModelKind], default=argparse.SUPPRESS)
    parser.add_argument("--symbols", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--states", type=int, default=argparse.SUPPRESS)


def add_run_flags(parser: argparse.ArgumentParser):
    add_model_flags(parser)
    parser.add_argument("--config", type=Path, default=None, help="Archivo JSON de configuración")
    parser.add_argument("--n-min", dest="n_min", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--n-max", dest="n_max", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--steps", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--extraction", choices=[p.value for p in ExtractionPolicy], default=argparse.SUPPRESS)
    parser.add_argument("--stop-rule", dest="stop_rule", choices=[r.value for r in StopRule], default=argparse.SUPPRESS)
    parser.add_argument("--sample-size", dest="sample_size", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--schedule", choices=[s.value for s in SampleSchedule], default=argparse.SUPPRESS)
    add_common_flags(parser)


def add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--output", "-o", type=Path, default=argparse.SUPPRESS)
    parser.add_argument("--registry-url", dest="registry_url", default=argparse.SUPPRESS,
                        help="URL del registro de corridas (vacío lo desactiva)")


def add_test_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--tail", choices=[t.value for t in Tail], default=argparse.SUPPRESS)
    parser.add_argument("--mode", choices=[m.value for m in PermutationMode], default=PermutationMode.AUTO.value)


def load_config(args: argparse.Namespace) -> RunConfig:
    """flag > archivo --config > valores por defecto"""
    data: dict = {}
    path = getattr(args, "config", None)
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise StorageError(f"No se pudo leer la configuración {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise StorageError(f"Configuración inválida en {path}: {e}") from e
        if not isinstance(data, dict):
            raise StorageError(f"{path}: la configuración debe ser un objeto JSON")

    for field in RunConfig.model_fields:
        if hasattr(args, field):
            data[field] = getattr(args, field)
    return RunConfig.model_validate(data)


def record_artifacts(config: RunConfig, command: str, model: str, paths: list[Path],
                     lengths: list[int | None] | None = None):
    """Una fila por archivo en el registro; un registro inaccesible no aborta la corrida"""
    if not config.registry_url:
        return
    lengths = lengths or [None] * len(paths)
    try:
        with get_session(config.registry_url) as db:
            registry = RunRegistry(db)
            for path, n in zip(paths, lengths):
                registry.record(
                    command=command,
                    model=model,
                    path=path,
                    seed=config.seed,
                    n=n,
                    sample_size=config.sample_size,
                )
    except Exception as e:
        logger.warning("⚠ No se pudo actualizar el registro de corridas: %s", e)
