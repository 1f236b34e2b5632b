"""
Subcomando `distribution` - corre el experimento para un rango de n y
escribe el directorio de secuencia (crudas + reducidas + convergencia)
"""
import argparse
import logging

from commands.common import add_run_flags, load_config, record_artifacts
from services.analysis import build_sequence, convergence_check
from services.storage import CONVERGENCE_COLUMNS, convergence_rows, dumps_csv, sequence_files, sequence_length, write_all

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("distribution", help="Construir D(X) crudas y reducidas por n")
    add_run_flags(parser)
    parser.add_argument("--n", type=int, default=None, help="Una sola longitud (atajo de --n-min/--n-max)")
    parser.set_defaults(func=cmd_distribution)


def cmd_distribution(args: argparse.Namespace) -> int:
    config = load_config(args)
    if args.n is not None:
        config = config.model_copy(update={"n_min": args.n, "n_max": args.n})

    raw = {}
    sequence = build_sequence(config, raw=raw)

    files = sequence_files(sequence, config.output, raw=raw)
    if len(sequence.lengths) >= 2:
        profile = convergence_check(sequence)
        files[config.output / "convergence.csv"] = dumps_csv(CONVERGENCE_COLUMNS, convergence_rows(profile))

    # Todo se renderiza en memoria antes de escribir el primer archivo
    paths = write_all(files)

    tag = sequence.model.tag
    lengths = [sequence_length(p) for p in paths]
    record_artifacts(config, "distribution", tag, paths, lengths)

    for n in sequence.lengths:
        print(f"{tag} n={n}: {len(raw[n].entries)} cadenas, {len(sequence.per_n[n].entries)} clases")
    return 0
