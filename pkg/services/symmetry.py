"""
Transformaciones que preservan la complejidad, órbitas, conteo de Burnside
y reducción de una distribución a clases de complejidad
"""
import math
from enum import Enum
from itertools import product

from models.distribution import ComplexityClass, Distribution


class Transformation(str, Enum):
    """Grupo de Klein {id, sy, co, syco}"""
    ID = "id"
    SY = "sy"
    CO = "co"
    SYCO = "syco"

    def apply(self, s: str) -> str:
        if self is Transformation.ID:
            return s
        if self is Transformation.SY:
            return s[::-1]
        if self is Transformation.CO:
            return complement(s)
        return complement(s[::-1])


_COMPLEMENT = str.maketrans("01", "10")


def complement(s: str) -> str:
    return s.translate(_COMPLEMENT)


def orbit(s: str) -> frozenset[str]:
    """{id(s), sy(s), co(s), syco(s)} sin duplicados"""
    if not s:
        raise ValueError("La cadena no puede ser vacía")
    return frozenset(t.apply(s) for t in Transformation)


def canonical(s: str) -> str:
    """Miembro aritméticamente menor de la órbita (índice de la clase)"""
    # Misma longitud: el orden lexicográfico coincide con el numérico
    return min(orbit(s))


def fixed_points(transformation: Transformation, n: int) -> int:
    """Cadenas de longitud n invariantes bajo la transformación"""
    if transformation is Transformation.ID:
        return 2 ** n
    if transformation is Transformation.SY:
        return 2 ** ((n + 1) // 2)
    if transformation is Transformation.CO:
        return 0
    # syco: solo hay palíndromos complementarios de longitud par
    return 2 ** (n // 2) if n % 2 == 0 else 0


def class_count(n: int) -> int:
    """
    Número de clases por el lema de Burnside (promedio de puntos fijos).

    Par: (2^n + 2*2^(n/2)) / 4. Impar: (2^n + 2^((n+1)/2)) / 4.
    """
    if n < 1:
        raise ValueError(f"n debe ser >= 1 (recibido {n})")
    total = sum(fixed_points(t, n) for t in Transformation)
    return total // len(Transformation)


def count_orbits(n: int) -> int:
    """Oráculo por fuerza bruta: particionar {0,1}^n con `orbit`"""
    seen: set[str] = set()
    count = 0
    for bits in product("01", repeat=n):
        s = "".join(bits)
        if s in seen:
            continue
        seen.update(orbit(s))
        count += 1
    return count


def complexity_classes(n: int, d: Distribution | None = None) -> list[ComplexityClass]:
    """
    Todas las clases de longitud n ordenadas por representante.

    Con `d`, cada clase lleva su peso reducido (0 si no se observó).
    """
    if d is not None and d.n != n:
        raise ValueError(f"La distribución es de longitud {d.n}, no {n}")
    weights = (reduce_distribution(d).weights or {}) if d is not None else {}
    classes: dict[str, ComplexityClass] = {}
    for bits in product("01", repeat=n):
        s = "".join(bits)
        key = canonical(s)
        if key not in classes:
            classes[key] = ComplexityClass(
                canonical=key, members=sorted(orbit(s)), weight=weights.get(key, 0.0)
            )
    return [classes[k] for k in sorted(classes)]


def reduce_distribution(d: Distribution) -> Distribution:
    """
    Agrupar por clase. Peso de la clase = (suma de probabilidades de sus
    miembros) / |órbita|; `entries` guarda los pesos renormalizados a 1.

    Las clases sin miembros observados se omiten.
    """
    if d.reduced:
        return d

    members: dict[str, list[float]] = {}
    sizes: dict[str, int] = {}
    for s, p in d.entries.items():
        key = canonical(s)
        members.setdefault(key, []).append(p)
        sizes[key] = len(orbit(s))

    # fsum redondea exacto: el resultado no depende del orden de las claves
    weights = {key: math.fsum(members[key]) / sizes[key] for key in sorted(members)}
    total = math.fsum(weights.values())
    entries = {key: weights[key] / total for key in sorted(weights)}

    return Distribution(n=d.n, entries=entries, reduced=True, weights=weights, meta=d.meta.model_copy(deep=True))


def transform_distribution(d: Distribution, transformation: Transformation) -> Distribution:
    """Aplicar la transformación a cada clave de una distribución sin reducir"""
    entries = {transformation.apply(s): p for s, p in d.entries.items()}
    return d.model_copy(update={"entries": entries})
