"""
Subcomando `natural` - distribución natural D_N promediando varias secuencias
"""
import argparse
from pathlib import Path

from commands.common import add_common_flags, load_config, record_artifacts
from services.analysis import natural_distribution
from services.storage import load_sequence, sequence_files, write_all


def register(subparsers):
    parser = subparsers.add_parser("natural", help="Promediar secuencias en D_N")
    parser.add_argument("sequences", type=Path, nargs="+", help="Directorios de secuencia")
    add_common_flags(parser)
    parser.set_defaults(func=cmd_natural)


def cmd_natural(args: argparse.Namespace) -> int:
    config = load_config(args)
    natural = natural_distribution([load_sequence(p) for p in args.sequences])

    paths = write_all(sequence_files(natural, config.output))
    record_artifacts(config, "natural", "natural", paths, natural.lengths)

    for n in natural.lengths:
        d = natural.per_n[n]
        top = d.sorted_keys()[0]
        print(f"n={n}: {len(d.entries)} clases, más frecuente {top} ({d.entries[top]:.4f})")
    return 0
