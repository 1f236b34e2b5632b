"""
Servicio de Muestreo - corre un experimento sobre el espacio de reglas,
extrae cadenas de longitud n y construye la distribución D(X)

Determinismo: la selección de reglas sale de SeedSequence(seed) y la
parada aleatoria de cada regla de SeedSequence(seed, spawn_key=(índice,)),
así el resultado no depende del orden ni del número de workers.
"""
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import rankdata

from config import MAX_SAMPLE_SIZE, SCHEDULE_HORIZON
from errors import CapacityError, ConfigError, EmptySampleError
from models.distribution import Distribution, DistributionMeta, RankedString
from models.experiment import (
    ExperimentSpec,
    ExtractionPolicy,
    ModelKind,
    ModelSpec,
    SampleSchedule,
    StopRule,
)
from services.rulespace import decode_eca, decode_tm, run_eca, run_tm

logger = logging.getLogger(__name__)

BACKGROUNDS = (0, 1)


# ============== EXTRACCIÓN ==============

def extract(output: str, n: int, policy: ExtractionPolicy) -> list[str]:
    """Cadenas de longitud n que aporta una salida cruda"""
    length = len(output)
    if length < n:
        return []
    if policy == ExtractionPolicy.EXACT_LENGTH:
        return [output] if length == n else []
    if policy == ExtractionPolicy.ALL_SUBSTRINGS:
        return [output[i:i + n] for i in range(length - n + 1)]
    if policy == ExtractionPolicy.CENTER_WINDOW:
        start = (length - n) // 2
        return [output[start:start + n]]
    return [output[:n]]


def schedule_sample_size(model: ModelSpec, n: int, schedule: SampleSchedule) -> int | None:
    """Tamaño de muestra del cronograma; None = todo el espacio"""
    if schedule == SampleSchedule.ALL:
        return None
    factor = model.space_size // SCHEDULE_HORIZON
    return max(1, min(n * factor, model.space_size))


def validate_spec(spec: ExperimentSpec) -> ExperimentSpec:
    spec = spec.resolved()
    if spec.steps < spec.n:
        raise ConfigError(
            f"steps ({spec.steps}) debe ser >= n ({spec.n}) para extraer cadenas de longitud n"
        )
    if spec.effective_sample_size > spec.model.space_size:
        raise ConfigError(
            f"sample_size ({spec.sample_size}) excede el espacio de {spec.model.tag} "
            f"({spec.model.space_size} reglas)"
        )
    if spec.effective_sample_size > MAX_SAMPLE_SIZE:
        raise CapacityError(
            f"La muestra de {spec.effective_sample_size} reglas de {spec.model.tag} excede "
            f"el máximo de {MAX_SAMPLE_SIZE} índices en memoria"
        )
    return spec


def select_indices(spec: ExperimentSpec) -> np.ndarray:
    """Índices de reglas a correr: sin reemplazo, uniformes, en orden ascendente"""
    space = spec.model.space_size
    size = spec.effective_sample_size
    if size == space:
        return np.arange(space, dtype=np.int64)
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    return np.sort(rng.choice(space, size=size, replace=False)).astype(np.int64)


def stop_steps(spec: ExperimentSpec, index: int) -> dict[int, int]:
    """Pasos a correr por fondo para la regla `index`"""
    if spec.stop_rule == StopRule.FIXED_STEPS:
        return {bg: spec.steps for bg in BACKGROUNDS}
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(int(index),)))
    # Siempre se sortean ambos fondos para que cada sorteo sea estable
    return {bg: int(rng.integers(spec.n, spec.steps, endpoint=True)) for bg in BACKGROUNDS}


def rule_output(model: ModelSpec, rule, background: int, steps: int) -> str:
    """Salida cruda de una regla ya decodificada"""
    if model.kind == ModelKind.TM:
        output, _ = run_tm(rule, background, steps)
        return output
    return run_eca(rule, background, steps)[-1].as_string()


def _decode(model: ModelSpec, index: int):
    if model.kind == ModelKind.TM:
        return decode_tm(index, model.symbols, model.states)
    return decode_eca(index)


def count_outputs(spec: ExperimentSpec, indices: Sequence[int], backgrounds: tuple[int, ...]) -> Counter:
    """Conteo de cadenas extraídas para un conjunto de índices de reglas"""
    counts: Counter = Counter()
    for index in indices:
        rule = _decode(spec.model, int(index))
        stops = stop_steps(spec, index)
        for bg in backgrounds:
            output = rule_output(spec.model, rule, bg, stops[bg])
            counts.update(extract(output, spec.n, spec.extraction))
    return counts


# ============== OPERACIONES ==============

def sample_outputs(
    spec: ExperimentSpec,
    workers: int = 1,
    backgrounds: tuple[int, ...] = BACKGROUNDS,
) -> Counter:
    """
    Correr cada regla muestreada desde ambos fondos y acumular las cadenas
    extraídas. Con workers > 1 el espacio se parte por rangos de índices.
    """
    spec = validate_spec(spec)
    indices = select_indices(spec)

    if workers <= 1 or len(indices) < 2 * workers:
        counts = count_outputs(spec, indices, backgrounds)
    else:
        chunks = np.array_split(indices, workers * 4)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(count_outputs, [spec] * len(chunks), chunks, [backgrounds] * len(chunks)))
        counts = merge_counts(parts)

    if not counts:
        raise EmptySampleError(
            f"Ninguna regla de {spec.model.tag} produjo cadenas de longitud {spec.n} "
            f"({spec.extraction.value}, {spec.steps} pasos)"
        )

    logger.info(
        "✓ Muestreo %s n=%d: %d reglas, %d cadenas extraídas",
        spec.model.tag, spec.n, len(indices), sum(counts.values()),
    )
    return counts


def merge_counts(parts: Iterable[Counter]) -> Counter:
    """Suma punto a punto; asociativa y conmutativa"""
    merged: Counter = Counter()
    length = None
    for part in parts:
        for s in part:
            if length is None:
                length = len(s)
            elif len(s) != length:
                raise ConfigError(f"Longitudes mezcladas al combinar: {length} y {len(s)}")
        merged.update(part)
    return merged


def build_distribution(counts: Counter, n: int, meta: DistributionMeta | None = None) -> Distribution:
    """Normalizar conteos; las cadenas con conteo cero no aparecen"""
    observed = {s: c for s, c in counts.items() if c > 0}
    if not observed:
        raise EmptySampleError("No se puede normalizar un multiconjunto vacío")
    wrong = [s for s in observed if len(s) != n]
    if wrong:
        raise ConfigError(f"Cadenas de longitud distinta a {n}: {wrong[:3]}")

    total = sum(observed.values())
    entries = {s: observed[s] / total for s in sorted(observed)}
    meta = meta.model_copy(update={"total_count": total}) if meta else DistributionMeta(total_count=total)
    return Distribution(n=n, entries=entries, meta=meta)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> Distribution:
    """sample_outputs + build_distribution con la procedencia completa"""
    spec = validate_spec(spec)
    counts = sample_outputs(spec, workers=workers)
    return build_distribution(counts, spec.n, DistributionMeta(experiment=spec))


def rank_strings(d: Distribution) -> list[RankedString]:
    """
    Orden descendente de probabilidad. Los empates reciben el rango promedio;
    dentro de un empate se presentan en orden aritmético.
    """
    keys = d.sorted_keys()
    ranks = rankdata([-d.entries[k] for k in keys], method="average")
    return [
        RankedString(string=k, probability=d.entries[k], rank=float(r))
        for k, r in zip(keys, ranks)
    ]
