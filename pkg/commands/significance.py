"""
Subcomando `significance-table` - tablas de p-valores por m y cola
"""
import argparse

from commands.common import add_common_flags, load_config, record_artifacts
from config import MONTE_CARLO_SAMPLES
from models.report import Tail
from services.rankstats import significance_table
from services.storage import SIGNIFICANCE_COLUMNS, dumps_csv, write_all


def register(subparsers):
    parser = subparsers.add_parser("significance-table", help="Emitir tablas de significancia de Spearman")
    parser.add_argument("--max-m", dest="max_m", type=int, default=11)
    parser.add_argument("--tail", dest="table_tail", choices=[t.value for t in Tail], default=None,
                        help="Una sola cola (por defecto ambas)")
    parser.add_argument("--samples", type=int, default=MONTE_CARLO_SAMPLES)
    add_common_flags(parser)
    parser.set_defaults(func=cmd_significance_table)


def cmd_significance_table(args: argparse.Namespace) -> int:
    config = load_config(args)
    tails = (Tail(args.table_tail),) if args.table_tail else (Tail.ONE_SIDED, Tail.TWO_SIDED)

    rows = significance_table(
        args.max_m,
        tails=tails,
        seed=config.seed,
        samples=args.samples,
        workers=config.workers,
    )

    path = config.output / "significance.csv"
    write_all({path: dumps_csv(SIGNIFICANCE_COLUMNS, rows)})
    record_artifacts(config, "significance-table", "rankstats", [path])
    print(f"{len(rows)} filas, m = 2..{args.max_m}")
    return 0
