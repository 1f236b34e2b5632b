"""
Subcomando `enumerate` - tamaño del espacio de reglas o tablas decodificadas
"""
import argparse

from commands.common import add_model_flags, load_config
from models.experiment import ModelKind
from services.rulespace import decode_eca, decode_tm, enumerate_eca, enumerate_tm, tm_space_size


def register(subparsers):
    parser = subparsers.add_parser("enumerate", help="Contar o listar reglas de un modelo")
    add_model_flags(parser)
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--count", action="store_true", help="Solo imprimir el tamaño del espacio")
    group.add_argument("--index", type=int, help="Imprimir la tabla de una regla")
    parser.add_argument("--start", type=int, default=0)
    parser.add_argument("--limit", type=int, default=20)
    parser.set_defaults(func=cmd_enumerate)


def format_tm(program) -> list[str]:
    lines = [f"# TM({program.symbols},{program.states}) índice {program.index}"]
    for state in range(1, program.states + 1):
        for symbol in range(program.symbols):
            action = program.action(state, symbol)
            lines.append(
                f"({state}, {symbol}) -> ({action.write}, {action.move.name}, {action.next_state})"
            )
    return lines


def format_eca(rule) -> list[str]:
    lines = [f"# ECA regla {rule.number}"]
    for neighbourhood in range(7, -1, -1):
        lines.append(f"{neighbourhood:03b} -> {rule.table[neighbourhood]}")
    return lines


def cmd_enumerate(args: argparse.Namespace) -> int:
    config = load_config(args)
    is_tm = config.model == ModelKind.TM

    if args.count:
        print(tm_space_size(config.symbols, config.states) if is_tm else 256)
        return 0

    if args.index is not None:
        if is_tm:
            lines = format_tm(decode_tm(args.index, config.symbols, config.states))
        else:
            lines = format_eca(decode_eca(args.index))
        print("\n".join(lines))
        return 0

    stop = args.start + args.limit
    if is_tm:
        for program in enumerate_tm(config.symbols, config.states, start=args.start, stop=stop):
            print(program.index, " ".join(map(str, program.codes())))
    else:
        for rule in enumerate_eca():
            if args.start <= rule.number < stop:
                print(rule.number, "".join(map(str, reversed(rule.table))))
    return 0
