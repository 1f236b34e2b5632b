"""
Subcomando `estimate` - K estimado por frecuencia: -log2 Pr(s) + O(1)
"""
import argparse
import logging
from pathlib import Path

from commands.common import load_config, record_artifacts
from services.analysis import estimate_k, k_table
from services.storage import K_TABLE_COLUMNS, dumps_csv, read_distribution, write_all

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("estimate", help="Estimar la complejidad de cadenas cortas")
    parser.add_argument("distribution", type=Path, help="Archivo de distribución (crudo o reducido)")
    parser.add_argument("--string", default=None, help="Una sola cadena; sin ella se imprime la tabla")
    parser.add_argument("--output", "-o", dest="csv_dir", type=Path, default=None, help="Además escribir la tabla como CSV")
    parser.add_argument("--registry-url", dest="registry_url", default=argparse.SUPPRESS)
    parser.set_defaults(func=cmd_estimate)


def cmd_estimate(args: argparse.Namespace) -> int:
    d = read_distribution(args.distribution)
    logger.info("Estimaciones relativas: K(s) = -log2 Pr(s) + O(1)")

    if args.string is not None:
        print(f"{args.string}\t{estimate_k(d, args.string):.6f} +O(1)")
        return 0

    text = dumps_csv(K_TABLE_COLUMNS, k_table(d))
    if args.csv_dir is not None:
        path = args.csv_dir / f"k_n{d.n:02d}.csv"
        write_all({path: text})
        config = load_config(args)
        tag = d.meta.experiment.model.tag if d.meta.experiment else "derived"
        record_artifacts(config, "estimate", tag, [path], [d.n])
    print(text, end="")
    return 0
