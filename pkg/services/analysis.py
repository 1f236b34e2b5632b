"""
Servicio de Análisis - secuencias de distribuciones, comparación entre
modelos, prueba de orden (naturalidad), convergencia y estimación de K
"""
import logging
import math
from itertools import combinations

import numpy as np

from config import NATURALNESS_C, SIGNIFICANT, STEPS_FACTOR
from errors import (
    ConfigError,
    IncomparableError,
    MissingEstimateError,
    UndefinedCorrelationError,
)
from models.distribution import Distribution, DistributionMeta
from models.experiment import ExperimentSpec, ModelSpec
from models.report import (
    ConvergenceStep,
    CorrelationReport,
    CorrelationRow,
    DistributionSequence,
    MonotonyVerdict,
    NaturalnessEvidence,
    NaturalnessLabel,
    NaturalnessVerdict,
    PermutationMode,
    Tail,
)
from models.run import RunConfig
from services.rankstats import min_p_value, pearson, permutation_test, rank_vector, spearman
from services.sampling import run_experiment, schedule_sample_size
from services.symmetry import canonical, orbit, reduce_distribution

logger = logging.getLogger(__name__)


def row_seed(seed: int, n: int) -> int:
    """Semilla derivada por longitud para que cada fila sea independiente"""
    return int(np.random.SeedSequence(seed, spawn_key=(n,)).generate_state(1)[0])


# ============== SECUENCIAS ==============

def experiment_spec(config: RunConfig, n: int) -> ExperimentSpec:
    model = ModelSpec(kind=config.model, symbols=config.symbols, states=config.states)
    sample_size = config.sample_size
    if sample_size is None:
        sample_size = schedule_sample_size(model, n, config.schedule)
    return ExperimentSpec(
        model=model,
        n=n,
        steps=config.steps if config.steps is not None else STEPS_FACTOR * n,
        sample_size=sample_size,
        extraction=config.extraction,
        stop_rule=config.stop_rule,
        seed=config.seed,
    )


def build_sequence(config: RunConfig, raw: dict[int, Distribution] | None = None) -> DistributionSequence:
    """
    Correr el experimento para cada n en [n_min, n_max] y reducir.

    Si se pasa `raw`, se llena con las distribuciones sin reducir.
    """
    if config.n_min < 2:
        raise ConfigError(f"n_min debe ser >= 2 (recibido {config.n_min}); con n=1 hay una sola clase")
    if config.n_max < config.n_min:
        raise ConfigError(f"n_max ({config.n_max}) < n_min ({config.n_min})")

    model = ModelSpec(kind=config.model, symbols=config.symbols, states=config.states)
    sequence = DistributionSequence(model=model)
    for n in range(config.n_min, config.n_max + 1):
        d = run_experiment(experiment_spec(config, n), workers=config.workers)
        d.meta.config = config.provenance()
        if raw is not None:
            raw[n] = d
        sequence.per_n[n] = reduce_distribution(d)
        logger.info("✓ %s n=%d: %d cadenas, %d clases", model.tag, n, len(d.entries), len(sequence.per_n[n].entries))
    return sequence


# ============== COMPARACIÓN ==============

def _shared(d1: Distribution, d2: Distribution, floor: float = 0.0) -> list[str]:
    return sorted(
        k for k in d1.support & d2.support
        if d1.entries[k] > floor and d2.entries[k] > floor
    )


def compare_models(
    a: DistributionSequence,
    b: DistributionSequence,
    tail: Tail = Tail.ONE_SIDED,
    seed: int = 0,
    mode: PermutationMode = PermutationMode.AUTO,
    workers: int = 1,
) -> CorrelationReport:
    """
    Para cada n común: rangos sobre la intersección de los soportes,
    Spearman con su significancia y Pearson sobre las probabilidades.
    """
    common = sorted(set(a.per_n) & set(b.per_n))
    if not common:
        raise ConfigError("Las dos secuencias no comparten ninguna longitud n")

    report = CorrelationReport(meta={
        "a": a.model.tag if a.model else "derived",
        "b": b.model.tag if b.model else "derived",
        "tail": tail.value,
        "mode": mode.value,
        "seed": seed,
    })
    for n in common:
        da, db = a.per_n[n], b.per_n[n]
        shared = _shared(da, db)
        row = CorrelationRow(n=n, elements=len(shared))
        if len(shared) < 2:
            row.note = "incomparable: menos de 2 clases compartidas"
            logger.warning("⚠ n=%d: %d clases compartidas, fila incomparable", n, len(shared))
            report.rows.append(row)
            continue

        x = rank_vector({k: da.entries[k] for k in shared})
        y = rank_vector({k: db.entries[k] for k in shared})
        try:
            row.spearman, row.significance = permutation_test(
                x, y, mode=mode, tail=tail, seed=row_seed(seed, n), workers=workers,
            )
            row.pearson = pearson([da.entries[k] for k in shared], [db.entries[k] for k in shared])
        except UndefinedCorrelationError as e:
            row.note = f"indefinida: {e}"
            logger.warning("⚠ n=%d: %s", n, e)
        report.rows.append(row)
    return report


def concordant_fraction(d1: Distribution, d2: Distribution, keys: list[str]) -> float:
    """Fracción de pares cuyo orden relativo coincide en ambas distribuciones"""
    pairs = list(combinations(keys, 2))
    if not pairs:
        return 1.0
    agree = sum(
        1 for s, t in pairs
        if np.sign(d1.entries[s] - d1.entries[t]) == np.sign(d2.entries[s] - d2.entries[t])
    )
    return agree / len(pairs)


def order_preserving(
    d1: Distribution,
    d2: Distribution,
    c: float = NATURALNESS_C,
    min_frequency: float = 0.0,
    tail: Tail = Tail.ONE_SIDED,
    seed: int = 0,
    workers: int = 1,
) -> MonotonyVerdict:
    """
    c-monotonía relativa: sobre las clases compartidas con frecuencia mayor
    a `min_frequency` en ambas, el orden se preserva si la significancia de
    Spearman es <= c con correlación positiva.
    """
    shared = _shared(d1, d2, floor=min_frequency)
    if len(shared) < 2:
        raise IncomparableError(f"Solo {len(shared)} clases compartidas sobre el umbral {min_frequency}")

    x = rank_vector({k: d1.entries[k] for k in shared})
    y = rank_vector({k: d2.entries[k] for k in shared})
    rho, result = permutation_test(x, y, tail=tail, seed=seed, workers=workers)
    return MonotonyVerdict(
        c=c,
        elements=len(shared),
        spearman=rho,
        p_value=result.p_value,
        preserved_fraction=concordant_fraction(d1, d2, shared),
        verdict=result.p_value <= c and rho > 0,
    )


def naturalness_test(
    candidate: DistributionSequence,
    reference: DistributionSequence,
    c: float = NATURALNESS_C,
    tail: Tail = Tail.ONE_SIDED,
    seed: int = 0,
    workers: int = 1,
) -> NaturalnessVerdict:
    """
    Prueba de preservación de orden contra una referencia, n por n.

    Las filas cuyo menor p-valor alcanzable supera c se reportan pero no
    cuentan: con 2 o 3 elementos ni un acuerdo perfecto es significativo.
    """
    common = sorted(set(candidate.per_n) & set(reference.per_n))
    evidence: list[NaturalnessEvidence] = []
    for n in common:
        dc, dr = candidate.per_n[n], reference.per_n[n]
        m = len(_shared(dc, dr))
        item = NaturalnessEvidence(n=n, elements=m)
        try:
            verdict = order_preserving(dc, dr, c=c, tail=tail, seed=row_seed(seed, n), workers=workers)
        except (IncomparableError, UndefinedCorrelationError) as e:
            item.note = str(e)
            evidence.append(item)
            continue

        item.spearman = verdict.spearman
        item.p_value = verdict.p_value
        item.preserved_fraction = verdict.preserved_fraction
        item.passed = verdict.verdict
        item.informative = min_p_value(m) <= c
        if not item.informative:
            item.note = f"no informativa: p mínimo {min_p_value(m):.4g} > c"
        evidence.append(item)

    informative = [e for e in evidence if e.informative]
    if not informative:
        logger.warning("⚠ Ninguna fila informativa para c=%s", c)
        label = NaturalnessLabel.NOT_NATURAL
    elif all(e.passed for e in informative):
        label = NaturalnessLabel.NATURAL
    elif all(e.spearman > 0 and e.p_value <= SIGNIFICANT for e in informative):
        label = NaturalnessLabel.QUASI
    else:
        label = NaturalnessLabel.NOT_NATURAL

    return NaturalnessVerdict(
        c=c,
        label=label,
        degree_spearman=float(np.mean([e.spearman for e in informative])) if informative else None,
        degree_preserved=float(np.mean([e.preserved_fraction for e in informative])) if informative else None,
        evidence=evidence,
    )


# ============== CONVERGENCIA ==============

def project(d: Distribution, n: int) -> Distribution:
    """
    Distribución de subcadenas de longitud n implicada por d.

    Una distribución reducida se expande primero repartiendo cada clase
    por igual entre los miembros de su órbita.
    """
    if n > d.n:
        raise ConfigError(f"No se puede proyectar longitud {d.n} a {n}")

    strings: dict[str, float] = {}
    for key, p in d.entries.items():
        members = sorted(orbit(key)) if d.reduced else [key]
        for s in members:
            strings[s] = strings.get(s, 0.0) + p / len(members)

    windows = d.n - n + 1
    projected: dict[str, list[float]] = {}
    for s, p in strings.items():
        for i in range(windows):
            projected.setdefault(s[i:i + n], []).append(p / windows)

    total = math.fsum(math.fsum(v) for v in projected.values())
    entries = {s: math.fsum(projected[s]) / total for s in sorted(projected)}
    result = Distribution(n=n, entries=entries, meta=d.meta.model_copy(deep=True))
    return reduce_distribution(result) if d.reduced else result


def total_variation(d1: Distribution, d2: Distribution, keys: list[str]) -> float:
    """Distancia de variación total sobre el soporte compartido renormalizado"""
    p = np.asarray([d1.entries[k] for k in keys])
    q = np.asarray([d2.entries[k] for k in keys])
    return float(0.5 * np.abs(p / p.sum() - q / q.sum()).sum())


def convergence_check(seq: DistributionSequence, mode: str | None = None) -> list[ConvergenceStep]:
    """
    Perfil de distancias entre longitudes consecutivas: 1 - rho (orden) y
    variación total (valores). Es evidencia, no prueba; los pasos sin
    soporte comparable quedan como huecos (None).
    """
    lengths = seq.lengths
    if len(lengths) < 2:
        raise ConfigError("Se necesitan al menos 2 distribuciones para medir convergencia")

    profile = []
    for prev_n, next_n in zip(lengths, lengths[1:]):
        prev, nxt = seq.per_n[prev_n], seq.per_n[next_n]
        if nxt.n != prev.n:
            nxt = project(nxt, prev.n)
        shared = _shared(prev, nxt)
        step = ConvergenceStep(n=next_n, elements=len(shared))
        if len(shared) >= 2:
            if mode in (None, "order"):
                try:
                    rho = spearman(
                        rank_vector({k: prev.entries[k] for k in shared}),
                        rank_vector({k: nxt.entries[k] for k in shared}),
                    )
                    step.order_distance = 1 - rho
                except UndefinedCorrelationError as e:
                    logger.warning("⚠ n=%d: distancia de orden indefinida (%s)", next_n, e)
            if mode in (None, "values"):
                step.value_distance = total_variation(prev, nxt, shared)
        else:
            logger.warning("⚠ n=%d: soportes no comparables", next_n)
        profile.append(step)
    return profile


# ============== ESTIMACIÓN DE K ==============

def estimate_k(d: Distribution, s: str) -> float:
    """-log2 de la probabilidad observada: K(s) + O(1), solo relativo"""
    key = canonical(s) if d.reduced else s
    p = d.entries.get(key)
    if p is None:
        raise MissingEstimateError(f"'{s}' no fue observada en la distribución (n={d.n})")
    return max(0.0, -math.log2(p))


def k_table(d: Distribution) -> list[dict]:
    """Tabla de estimaciones en orden de rango"""
    ranks = rank_vector(d.entries)
    return [
        {
            "string": key,
            "probability": d.entries[key],
            "rank": rank,
            "k_estimate": estimate_k(d, key),
        }
        for key, rank in zip(ranks.labels, ranks.ranks)
    ]


def rank_frequency(d: Distribution) -> tuple[list[dict], float | None]:
    """
    Perfil rango-frecuencia para gráficos log y el exponente de una ley de
    potencias ajustada por mínimos cuadrados en ejes log-log.
    """
    keys = d.sorted_keys()
    rows = [
        {"rank": i, "string": k, "probability": d.entries[k], "log10_probability": math.log10(d.entries[k])}
        for i, k in enumerate(keys, start=1)
    ]
    if len(rows) < 2:
        return rows, None
    slope, _ = np.polyfit(
        np.log10([r["rank"] for r in rows]),
        [r["log10_probability"] for r in rows],
        1,
    )
    return rows, float(slope)


def natural_distribution(sequences: list[DistributionSequence]) -> DistributionSequence:
    """
    D_N: para cada n común, promedio de las distribuciones reducidas
    renormalizadas sobre la unión de soportes.
    """
    if not sequences:
        raise ConfigError("Se necesita al menos una secuencia")
    common = sorted(set.intersection(*(set(s.per_n) for s in sequences)))
    if not common:
        raise ConfigError("Las secuencias no comparten ninguna longitud n")

    result = DistributionSequence(model=None)
    sources = [s.model.tag if s.model else "derived" for s in sequences]
    for n in common:
        parts = [reduce_distribution(s.per_n[n]) for s in sequences]
        keys = sorted(set().union(*(p.support for p in parts)))
        mean = {k: math.fsum(p.probability(k) for p in parts) / len(parts) for k in keys}
        total = math.fsum(mean.values())
        entries = {k: mean[k] / total for k in keys}
        result.per_n[n] = Distribution(
            n=n,
            entries=entries,
            reduced=True,
            meta=DistributionMeta(sources=sources),
        )
    return result

