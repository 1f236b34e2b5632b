"""
Servicio de Almacenamiento - archivos de distribución (JSON), reportes CSV
y reporte Markdown. Toda escritura es atómica: archivo temporal en el mismo
directorio y luego os.replace.
"""
import csv
import hashlib
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Iterable, Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import ValidationError

from config import SCHEMA_VERSION, TEMPLATES_DIR
from errors import StorageError
from models.distribution import Distribution, DistributionMeta
from models.report import (
    ConvergenceStep,
    CorrelationReport,
    DistributionSequence,
    NaturalnessVerdict,
)
from services.rankstats import rank_vector
from services.symmetry import reduce_distribution

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["n", "elements", "spearman", "p_value", "tail", "method", "verdict", "pearson"]
PLOT_COLUMNS = ["n", "string", "rank_a", "rank_b", "weight_a", "weight_b"]
RANKFREQ_COLUMNS = ["rank", "string", "probability", "log10_probability"]
CONVERGENCE_COLUMNS = ["n", "order_distance", "value_distance"]
EVIDENCE_COLUMNS = ["n", "elements", "spearman", "p_value", "preserved_fraction", "passed", "informative", "note"]
SIGNIFICANCE_COLUMNS = ["m", "rho", "tail", "method", "p_value", "verdict"]
K_TABLE_COLUMNS = ["rank", "string", "probability", "k_estimate"]


# ============== ESCRITURA ATÓMICA ==============

def atomic_write(path: Path, data: str) -> Path:
    """Escribir `data` en `path` sin dejar archivos parciales"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as e:
        raise StorageError(f"No se pudo escribir {path}: {e}") from e
    return path


def write_all(files: dict[Path, str]) -> list[Path]:
    """Escribir varios archivos ya renderizados en memoria"""
    written = [atomic_write(path, data) for path, data in files.items()]
    for path in written:
        logger.info("✓ Escrito %s", path)
    return written


def digest(path: Path) -> str:
    """SHA-256 de los bytes del archivo"""
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError as e:
        raise StorageError(f"No se pudo leer {path}: {e}") from e


# ============== DISTRIBUCIONES ==============

def dumps_distribution(d: Distribution) -> str:
    """
    JSON con `meta` primero y luego las entradas en orden de rango. Los
    floats usan el repr más corto que vuelve a leerse idéntico.
    """
    keys = d.sorted_keys()
    payload = {
        "meta": d.meta.model_dump(mode="json"),
        "n": d.n,
        "reduced": d.reduced,
        "entries": [{"string": k, "probability": d.entries[k]} for k in keys],
    }
    if d.weights is not None:
        payload["weights"] = [{"string": k, "weight": d.weights[k]} for k in keys]
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def loads_distribution(text: str, source: str = "<memoria>") -> Distribution:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise StorageError(f"{source}: JSON inválido ({e})") from e

    if not isinstance(payload, dict) or "entries" not in payload:
        raise StorageError(f"{source}: no es un archivo de distribución")
    version = payload.get("meta", {}).get("schema_version")
    if version != SCHEMA_VERSION:
        raise StorageError(f"{source}: schema_version {version} no soportado (se espera {SCHEMA_VERSION})")

    try:
        entries = {e["string"]: float(e["probability"]) for e in payload["entries"]}
        weights = None
        if "weights" in payload:
            weights = {w["string"]: float(w["weight"]) for w in payload["weights"]}
        return Distribution(
            n=payload["n"],
            entries=entries,
            reduced=bool(payload.get("reduced", False)),
            weights=weights,
            meta=DistributionMeta.model_validate(payload["meta"]),
        )
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise StorageError(f"{source}: estructura inválida ({e})") from e


def write_distribution(d: Distribution, path: Path) -> Path:
    return atomic_write(path, dumps_distribution(d))


def read_distribution(path: Path) -> Distribution:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StorageError(f"No se pudo leer {path}: {e}") from e
    return loads_distribution(text, source=str(path))


# ============== SECUENCIAS ==============

def sequence_files(
    sequence: DistributionSequence,
    directory: Path,
    raw: Optional[dict[int, Distribution]] = None,
) -> dict[Path, str]:
    """Archivos de un directorio de secuencia: nNN.json (crudo) y nNN.reduced.json"""
    directory = Path(directory)
    files: dict[Path, str] = {}
    for n in sequence.lengths:
        if raw and n in raw:
            files[directory / f"n{n:02d}.json"] = dumps_distribution(raw[n])
        files[directory / f"n{n:02d}.reduced.json"] = dumps_distribution(sequence.per_n[n])
    return files


def sequence_length(path: Path) -> Optional[int]:
    """n de un archivo nNN.json o nNN.reduced.json; None si el nombre no sigue el patrón"""
    name = Path(path).name
    stem = name.removesuffix(".reduced.json").removesuffix(".json")
    if stem == name or not stem.startswith("n"):
        return None
    try:
        return int(stem[1:])
    except ValueError:
        return None


def read_sequence(directory: Path) -> DistributionSequence:
    """
    Leer un directorio de secuencia. Se prefieren los archivos reducidos;
    si falta alguno se reduce el crudo.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise StorageError(f"No existe el directorio de secuencia {directory}")

    per_n: dict[int, Distribution] = {}
    for path in sorted(directory.glob("n*.json")):
        n = sequence_length(path)
        if n is None:
            continue
        if path.name.endswith(".reduced.json"):
            per_n[n] = read_distribution(path)
        elif n not in per_n and not (directory / f"n{n:02d}.reduced.json").exists():
            per_n[n] = reduce_distribution(read_distribution(path))

    if not per_n:
        raise StorageError(f"{directory}: no contiene distribuciones")

    model = None
    first = per_n[min(per_n)]
    if first.meta.experiment is not None:
        model = first.meta.experiment.model
    return DistributionSequence(model=model, per_n=per_n)


def load_sequence(path: Path) -> DistributionSequence:
    """Directorio de secuencia o un único archivo de distribución"""
    path = Path(path)
    if path.is_dir():
        return read_sequence(path)
    d = read_distribution(path)
    model = d.meta.experiment.model if d.meta.experiment else None
    return DistributionSequence(model=model, per_n={d.n: reduce_distribution(d)})


# ============== CSV ==============

def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def dumps_csv(columns: list[str], rows: Iterable[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def report_rows(report: CorrelationReport) -> list[dict]:
    rows = []
    for row in report.rows:
        sig = row.significance
        rows.append({
            "n": row.n,
            "elements": row.elements,
            "spearman": row.spearman,
            "p_value": sig.p_value if sig else None,
            "tail": sig.tail.value if sig else None,
            "method": sig.method.value if sig else None,
            "verdict": sig.verdict.value if sig else None,
            "pearson": row.pearson,
        })
    return rows


def plot_rows(a: DistributionSequence, b: DistributionSequence, n: int) -> list[dict]:
    """Pares de pesos alineados por clase, en el orden de rango de a"""
    da, db = a.per_n[n], b.per_n[n]
    shared = sorted(da.support & db.support)
    if not shared:
        return []
    ra = rank_vector({k: da.entries[k] for k in shared})
    rb = rank_vector({k: db.entries[k] for k in shared})
    rank_b = dict(zip(rb.labels, rb.ranks))
    return [
        {
            "n": n,
            "string": k,
            "rank_a": r,
            "rank_b": rank_b[k],
            "weight_a": da.entries[k],
            "weight_b": db.entries[k],
        }
        for k, r in zip(ra.labels, ra.ranks)
    ]


def convergence_rows(profile: list[ConvergenceStep]) -> list[dict]:
    return [step.model_dump(include=set(CONVERGENCE_COLUMNS)) for step in profile]


def evidence_rows(verdict: NaturalnessVerdict) -> list[dict]:
    return [e.model_dump(include=set(EVIDENCE_COLUMNS)) for e in verdict.evidence]


# ============== MARKDOWN ==============

def render_report(report: CorrelationReport, exponents: Optional[dict] = None) -> str:
    """Reporte de comparación legible a partir de templates/report.md.j2"""
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATES_DIR)),
        undefined=StrictUndefined,
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )
    template = env.get_template("report.md.j2")
    return template.render(
        meta=report.meta,
        rows=report_rows(report),
        notes={row.n: row.note for row in report.rows if row.note},
        exponents=exponents or {},
    )
