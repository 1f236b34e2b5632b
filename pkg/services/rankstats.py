"""
Estadística de rangos: Spearman, Pearson y pruebas de permutación
(exacta por enumeración o Monte Carlo con semilla)
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations

import numpy as np
from scipy.stats import rankdata

from config import (
    EXACT_PERMUTATION_LIMIT,
    HIGHLY_SIGNIFICANT,
    MONTE_CARLO_BATCH,
    MONTE_CARLO_SAMPLES,
    RHO_TOLERANCE,
    SIGNIFICANT,
)
from errors import CapacityError, UndefinedCorrelationError
from models.report import (
    Method,
    PermutationMode,
    RankVector,
    SignificanceResult,
    Tail,
    Verdict,
)

logger = logging.getLogger(__name__)

# Matriz de 9! x 9 permutaciones (~26 MB); más allá no se enumera
EXACT_HARD_LIMIT = 9


def rank_vector(values: dict[str, float]) -> RankVector:
    """Rangos descendentes (1 = más probable), promedio en empates"""
    labels = sorted(values, key=lambda s: (-values[s], s))
    ranks = rankdata([-values[k] for k in labels], method="average")
    return RankVector(ranks=[float(r) for r in ranks], labels=labels)


def _aligned(x: RankVector, y: RankVector) -> tuple[np.ndarray, np.ndarray]:
    if len(x.ranks) != len(y.ranks):
        raise UndefinedCorrelationError(
            f"Vectores de distinto tamaño: {len(x.ranks)} y {len(y.ranks)}"
        )
    if len(x.ranks) < 2:
        raise UndefinedCorrelationError("Se necesitan al menos 2 elementos")

    xr = np.asarray(x.ranks, dtype=float)
    if x.labels and y.labels and x.labels != y.labels:
        position = {label: i for i, label in enumerate(y.labels)}
        if set(position) != set(x.labels):
            raise UndefinedCorrelationError("Las etiquetas de los dos rankings no coinciden")
        yr = np.asarray([y.ranks[position[label]] for label in x.labels], dtype=float)
    else:
        yr = np.asarray(y.ranks, dtype=float)
    return xr, yr


def _has_ties(ranks: np.ndarray) -> bool:
    return len(np.unique(ranks)) != len(ranks)


def pearson(x, y) -> float:
    """Correlación producto-momento"""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape:
        raise UndefinedCorrelationError(f"Tamaños distintos: {xa.shape} y {ya.shape}")
    if xa.size < 2:
        raise UndefinedCorrelationError("Se necesitan al menos 2 elementos")

    xc = xa - xa.mean()
    yc = ya - ya.mean()
    sxx = float(xc @ xc)
    syy = float(yc @ yc)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("Varianza cero: la correlación no está definida")
    r = float(xc @ yc) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def spearman(x: RankVector, y: RankVector) -> float:
    """
    Sin empates: rho = 1 - 6*sum(d^2) / (m(m^2-1)).
    Con empates: Pearson sobre los rangos.
    """
    xr, yr = _aligned(x, y)
    if _has_ties(xr) or _has_ties(yr):
        return pearson(xr, yr)

    m = len(xr)
    d2 = int(round(float(((xr - yr) ** 2).sum())))
    return 1 - 6 * d2 / (m * (m * m - 1))


def classify(p: float) -> Verdict:
    if p <= HIGHLY_SIGNIFICANT:
        return Verdict.HIGHLY_SIGNIFICANT
    if p <= SIGNIFICANT:
        return Verdict.SIGNIFICANT
    return Verdict.NOT_SIGNIFICANT


# ============== PRUEBAS DE PERMUTACIÓN ==============

def _null_rhos(xr: np.ndarray, permuted_y: np.ndarray) -> np.ndarray:
    """rho (Pearson sobre rangos) de x contra cada fila de permuted_y"""
    xc = xr - xr.mean()
    yc = permuted_y - permuted_y.mean(axis=1, keepdims=True)
    denom = math.sqrt(float(xc @ xc)) * np.sqrt((yc * yc).sum(axis=1))
    return (yc @ xc) / denom


def _extreme(rhos: np.ndarray, observed: float, tail: Tail) -> int:
    if tail == Tail.ONE_SIDED:
        return int((rhos >= observed - RHO_TOLERANCE).sum())
    return int((np.abs(rhos) >= abs(observed) - RHO_TOLERANCE).sum())


def _exact_count(xr: np.ndarray, yr: np.ndarray, observed: float, tail: Tail) -> tuple[int, int]:
    m = len(xr)
    if m > EXACT_HARD_LIMIT:
        raise CapacityError(f"Permutación exacta con m={m} requiere {math.factorial(m)} permutaciones")
    perms = np.asarray(list(permutations(range(m))), dtype=np.intp)
    rhos = _null_rhos(xr, yr[perms])
    return _extreme(rhos, observed, tail), len(perms)


def _monte_carlo_batch(xr: np.ndarray, yr: np.ndarray, observed: float, tail: Tail,
                       seed: int, batch: int, size: int) -> int:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(batch,)))
    permuted = rng.permuted(np.tile(yr, (size, 1)), axis=1)
    return _extreme(_null_rhos(xr, permuted), observed, tail)


def _monte_carlo_count(xr: np.ndarray, yr: np.ndarray, observed: float, tail: Tail,
                       seed: int, samples: int, workers: int) -> int:
    sizes = [MONTE_CARLO_BATCH] * (samples // MONTE_CARLO_BATCH)
    if samples % MONTE_CARLO_BATCH:
        sizes.append(samples % MONTE_CARLO_BATCH)
    args = [(xr, yr, observed, tail, seed, b, size) for b, size in enumerate(sizes)]

    if workers <= 1 or len(args) < 2:
        return sum(_monte_carlo_batch(*a) for a in args)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_monte_carlo_batch, *zip(*args)))


def _resolve_mode(mode: PermutationMode, m: int) -> Method:
    if mode == PermutationMode.EXACT:
        return Method.EXACT_PERMUTATION
    if mode == PermutationMode.MONTE_CARLO:
        return Method.MONTE_CARLO
    return Method.EXACT_PERMUTATION if m < EXACT_PERMUTATION_LIMIT else Method.MONTE_CARLO


def _test(xr: np.ndarray, yr: np.ndarray, observed: float, mode: PermutationMode, tail: Tail,
          seed: int, samples: int, workers: int) -> SignificanceResult:
    m = len(xr)
    method = _resolve_mode(mode, m)
    if method == Method.EXACT_PERMUTATION:
        count, total = _exact_count(xr, yr, observed, tail)
        p = count / total
        n_samples = None
    else:
        count = _monte_carlo_count(xr, yr, observed, tail, seed, samples, workers)
        # Corrección +1: el arreglo observado cuenta como una muestra
        p = (count + 1) / (samples + 1)
        n_samples = samples
    return SignificanceResult(p_value=p, method=method, tail=tail, samples=n_samples, verdict=classify(p))


def significance(
    observed_rho: float,
    m: int,
    mode: PermutationMode = PermutationMode.AUTO,
    tail: Tail = Tail.ONE_SIDED,
    seed: int = 0,
    samples: int = MONTE_CARLO_SAMPLES,
    workers: int = 1,
) -> SignificanceResult:
    """
    p-valor de rho bajo la hipótesis nula de rangos sin empates 1..m.

    Unilateral: fracción con rho >= observado. Bilateral: |rho| >= |observado|.
    AUTO usa permutación exacta para m < 9 y Monte Carlo para m >= 9.
    """
    if m < 2:
        raise UndefinedCorrelationError("Se necesitan al menos 2 elementos")
    ranks = np.arange(1, m + 1, dtype=float)
    return _test(ranks, ranks, observed_rho, mode, tail, seed, samples, workers)


def permutation_test(
    x: RankVector,
    y: RankVector,
    mode: PermutationMode = PermutationMode.AUTO,
    tail: Tail = Tail.ONE_SIDED,
    seed: int = 0,
    samples: int = MONTE_CARLO_SAMPLES,
    workers: int = 1,
) -> tuple[float, SignificanceResult]:
    """rho observado y su significancia permutando los rangos reales de y (respeta empates)"""
    rho = spearman(x, y)
    xr, yr = _aligned(x, y)
    return rho, _test(xr, yr, rho, mode, tail, seed, samples, workers)


def min_p_value(m: int, mode: PermutationMode = PermutationMode.AUTO,
                samples: int = MONTE_CARLO_SAMPLES) -> float:
    """Menor p-valor alcanzable con m elementos"""
    if _resolve_mode(mode, m) == Method.EXACT_PERMUTATION:
        return 1 / math.factorial(m)
    return 1 / (samples + 1)


def attainable_rhos(m: int) -> list[float]:
    """Valores de rho posibles sin empates, enumerando sum(d^2) sobre las m! permutaciones"""
    if m < 2:
        raise UndefinedCorrelationError("Se necesitan al menos 2 elementos")
    if m > EXACT_HARD_LIMIT:
        raise CapacityError(f"Enumerar rho para m={m} requiere {math.factorial(m)} permutaciones")
    perms = np.asarray(list(permutations(range(m))), dtype=np.int64)
    d2 = np.unique(((perms - np.arange(m)) ** 2).sum(axis=1))
    return [1 - 6 * int(d) / (m * (m * m - 1)) for d in d2]


def significance_table(max_m: int, tails: tuple[Tail, ...] = (Tail.ONE_SIDED, Tail.TWO_SIDED),
                       seed: int = 0, samples: int = MONTE_CARLO_SAMPLES,
                       workers: int = 1) -> list[dict]:
    """
    Tablas de p-valores por m. Con permutación exacta se listan todos los
    rho alcanzables; con Monte Carlo una grilla de 0 a 1 en pasos de 0.05.
    """
    rows = []
    for m in range(2, max_m + 1):
        exact = _resolve_mode(PermutationMode.AUTO, m) == Method.EXACT_PERMUTATION
        grid = attainable_rhos(m) if exact else [round(1 - 0.05 * i, 2) for i in range(21)]
        for tail in tails:
            for rho in grid:
                result = significance(rho, m, tail=tail, seed=seed, samples=samples, workers=workers)
                rows.append({
                    "m": m,
                    "rho": rho,
                    "tail": tail.value,
                    "method": result.method.value,
                    "p_value": result.p_value,
                    "verdict": result.verdict.value,
                })
        logger.info("✓ Tabla de significancia m=%d (%d valores)", m, len(grid))
    return rows
