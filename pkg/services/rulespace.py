"""
Motores y enumeradores de los dos modelos de computación

- Máquinas de Turing de s símbolos y k estados, sin estado de parada:
  el espacio tiene (2sk)^(sk) programas y cada máquina corre exactamente
  `steps` pasos.
- Autómatas celulares elementales (radio 1, binarios): 256 reglas.
"""
from dataclasses import replace
from typing import Iterator

import numpy as np

from errors import ConfigError, IndexRangeError
from models.machine import EcaRow, EcaRule, TmAction, TmConfiguration, TmProgram, tm_space_size


# ============== MÁQUINAS DE TURING ==============

def decode_tm(index: int, symbols: int, states: int) -> TmProgram:
    """
    Decodificar el índice como número en base 2sk.

    La casilla 0 (estado 1, símbolo 0) es el dígito más significativo;
    la última casilla (estado k, símbolo s-1) el menos significativo.
    """
    size = tm_space_size(symbols, states)
    if not 0 <= index < size:
        raise IndexRangeError(f"Índice {index} fuera de [0, {size}) para TM({symbols},{states})")

    base = 2 * symbols * states
    slots = symbols * states
    codes = [0] * slots
    rest = index
    for slot in range(slots - 1, -1, -1):
        rest, codes[slot] = divmod(rest, base)

    table = tuple(TmAction.decode(code, states) for code in codes)
    return TmProgram(symbols=symbols, states=states, table=table, index=index)


def encode_tm(program: TmProgram) -> int:
    """Inverso de decode_tm"""
    base = 2 * program.symbols * program.states
    index = 0
    for code in program.codes():
        index = index * base + code
    return index


def enumerate_tm(symbols: int, states: int, start: int = 0, stop: int | None = None) -> Iterator[TmProgram]:
    """Programas en orden ascendente de índice; [start, stop) permite particionar"""
    size = tm_space_size(symbols, states)
    stop = size if stop is None else min(stop, size)
    for index in range(start, stop):
        yield decode_tm(index, symbols, states)


def swap_symbols(program: TmProgram) -> TmProgram:
    """
    Intercambiar 0 y 1 en las casillas leídas y en los símbolos escritos.

    Solo para máquinas binarias. Es una biyección del espacio TM(2,k).
    """
    if program.symbols != 2:
        raise ConfigError("El intercambio de símbolos solo aplica a máquinas binarias")

    table = []
    for state in range(1, program.states + 1):
        for symbol in (0, 1):
            old = program.action(state, 1 - symbol)
            table.append(TmAction(write=1 - old.write, move=old.move, next_state=old.next_state))

    swapped = TmProgram(symbols=2, states=program.states, table=tuple(table), index=0)
    return replace(swapped, index=encode_tm(swapped))


def run_tm(program: TmProgram, background: int, steps: int) -> tuple[str, TmConfiguration]:
    """
    Correr desde cinta uniforme `background`, estado 1, cabezal en la celda 0.

    La salida son las celdas [visited_min, visited_max], incluida la celda
    bajo el cabezal al terminar aunque nunca se haya escrito.
    """
    if steps < 0:
        raise ConfigError(f"steps debe ser >= 0 (recibido {steps})")

    symbols = program.symbols
    writes = [a.write for a in program.table]
    deltas = [a.move.delta for a in program.table]
    nexts = [a.next_state for a in program.table]

    # El cabezal nunca se aleja más de `steps` celdas del origen
    tape = bytearray([background]) * (2 * steps + 1)
    origin = steps
    pos = origin
    state = 1
    low = high = origin

    for _ in range(steps):
        slot = (state - 1) * symbols + tape[pos]
        tape[pos] = writes[slot]
        pos += deltas[slot]
        state = nexts[slot]
        if pos < low:
            low = pos
        elif pos > high:
            high = pos

    cells = tuple(tape[low:high + 1])
    output = "".join(map(str, cells))
    final = TmConfiguration(
        tape=cells,
        background=background,
        head=pos - origin,
        state=state,
        visited_min=low - origin,
        visited_max=high - origin,
        step=steps,
    )
    return output, final


# ============== AUTÓMATAS CELULARES ==============

def enumerate_eca() -> Iterator[EcaRule]:
    """Reglas 0..255 en orden ascendente"""
    for number in range(256):
        yield EcaRule.from_number(number)


def decode_eca(number: int) -> EcaRule:
    if not 0 <= number < 256:
        raise IndexRangeError(f"Regla {number} fuera de [0, 256)")
    return EcaRule.from_number(number)


def step_eca(rule: EcaRule, row: EcaRow) -> EcaRow:
    """
    Un paso en paralelo: la fila crece una celda por lado.

    Las celdas fuera de la fila valen `background`; el fondo mismo evoluciona
    con la regla aplicada a la vecindad uniforme (bg, bg, bg).
    """
    table = np.asarray(rule.table, dtype=np.uint8)
    bg = row.background
    padded = np.pad(np.asarray(row.cells, dtype=np.uint8), 2, constant_values=bg)
    index = 4 * padded[:-2] + 2 * padded[1:-1] + padded[2:]
    cells = table[index]
    return EcaRow(
        cells=tuple(int(c) for c in cells),
        origin_offset=row.origin_offset + 1,
        background=rule.table[7 * bg],
        step=row.step + 1,
    )


def run_eca(rule: EcaRule, seed_background: int, steps: int) -> list[EcaRow]:
    """Filas 0..steps desde una semilla (complemento del fondo) en la celda 0"""
    if steps < 0:
        raise ConfigError(f"steps debe ser >= 0 (recibido {steps})")

    row = EcaRow(cells=(1 - seed_background,), origin_offset=0, background=seed_background, step=0)
    rows = [row]
    for _ in range(steps):
        row = step_eca(rule, row)
        rows.append(row)
    return rows
