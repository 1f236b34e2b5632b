"""
Tipos de los dos modelos de computación: máquinas de Turing (s símbolos,
k estados) y autómatas celulares elementales (radio 1, binarios)
"""
import math
from dataclasses import dataclass
from enum import IntEnum

from config import INDEX_LIMIT
from errors import CapacityError, ConfigError


def tm_space_size(symbols: int, states: int) -> int:
    """(2sk)^(sk), verificando que cabe en la aritmética de índices"""
    if symbols < 1 or states < 1:
        raise ConfigError(f"símbolos y estados deben ser >= 1 (s={symbols}, k={states})")
    base = 2 * symbols * states
    slots = symbols * states
    # Cota por logaritmo antes de construir la potencia completa
    if slots * math.log2(base) > math.log2(INDEX_LIMIT) + 1:
        raise CapacityError(
            f"El espacio TM({symbols},{states}) tiene ~2^{slots * math.log2(base):.0f} programas; "
            f"excede el límite de índices {INDEX_LIMIT}"
        )
    size = base ** slots
    if size - 1 > INDEX_LIMIT:
        raise CapacityError(
            f"El espacio TM({symbols},{states}) tiene {size} programas; "
            f"excede el límite de índices {INDEX_LIMIT}"
        )
    return size


class Move(IntEnum):
    """Dirección del cabezal. El valor entra en el código de la acción."""
    LEFT = 0
    RIGHT = 1

    @property
    def delta(self) -> int:
        return 1 if self is Move.RIGHT else -1


@dataclass(frozen=True, slots=True)
class TmAction:
    """
    Cola (símbolo escrito, movimiento, estado siguiente) de una regla 5-tupla.

    Código entero: write*(2k) + move*k + (next_state - 1), en [0, 2sk).
    """
    write: int
    move: Move
    next_state: int

    def encode(self, states: int) -> int:
        return self.write * 2 * states + int(self.move) * states + (self.next_state - 1)

    @classmethod
    def decode(cls, code: int, states: int) -> "TmAction":
        write, rest = divmod(code, 2 * states)
        move, next_index = divmod(rest, states)
        return cls(write=write, move=Move(move), next_state=next_index + 1)


@dataclass(frozen=True, slots=True)
class TmProgram:
    """
    Tabla de transición total de una máquina con `symbols` símbolos y `states` estados.

    `table` tiene una acción por casilla; la casilla de (estado q, símbolo a)
    es (q - 1) * symbols + a. La casilla 0 es el dígito más significativo
    del índice en base 2sk.
    """
    symbols: int
    states: int
    table: tuple[TmAction, ...]
    index: int

    def slot(self, state: int, symbol: int) -> int:
        return (state - 1) * self.symbols + symbol

    def action(self, state: int, symbol: int) -> TmAction:
        return self.table[self.slot(state, symbol)]

    def codes(self) -> tuple[int, ...]:
        return tuple(a.encode(self.states) for a in self.table)


@dataclass(frozen=True, slots=True)
class TmConfiguration:
    """
    Configuración final de una corrida.

    `tape` contiene las celdas [visited_min, visited_max]; fuera de ese
    rango toda celda vale `background`.
    """
    tape: tuple[int, ...]
    background: int
    head: int
    state: int
    visited_min: int
    visited_max: int
    step: int

    def symbol_at(self, cell: int) -> int:
        if self.visited_min <= cell <= self.visited_max:
            return self.tape[cell - self.visited_min]
        return self.background


@dataclass(frozen=True, slots=True)
class EcaRule:
    """Regla elemental: table[4*b2 + 2*b1 + b0] es el bit correspondiente de `number`."""
    number: int
    table: tuple[int, ...]

    @classmethod
    def from_number(cls, number: int) -> "EcaRule":
        return cls(number=number, table=tuple((number >> i) & 1 for i in range(8)))


@dataclass(frozen=True, slots=True)
class EcaRow:
    """Fila del cono de luz: 2t+1 celdas alrededor de la semilla, fondo uniforme fuera."""
    cells: tuple[int, ...]
    origin_offset: int
    background: int
    step: int

    def as_string(self) -> str:
        return "".join(map(str, self.cells))
