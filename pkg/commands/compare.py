"""
Subcomando `compare` - correlación de rangos entre dos secuencias con
reporte CSV, datos de gráfico por n y reporte Markdown
"""
import argparse
from pathlib import Path

from commands.common import add_common_flags, add_test_flags, load_config, record_artifacts
from models.report import PermutationMode
from services.analysis import compare_models, rank_frequency
from services.storage import (
    PLOT_COLUMNS,
    RANKFREQ_COLUMNS,
    REPORT_COLUMNS,
    dumps_csv,
    load_sequence,
    plot_rows,
    render_report,
    report_rows,
    write_all,
)


def register(subparsers):
    parser = subparsers.add_parser("compare", help="Comparar dos secuencias de distribuciones")
    parser.add_argument("a", type=Path, help="Directorio de secuencia o archivo de distribución")
    parser.add_argument("b", type=Path, help="Directorio de secuencia o archivo de distribución")
    add_test_flags(parser)
    add_common_flags(parser)
    parser.set_defaults(func=cmd_compare)


def cmd_compare(args: argparse.Namespace) -> int:
    config = load_config(args)
    a = load_sequence(args.a)
    b = load_sequence(args.b)

    report = compare_models(
        a, b,
        tail=config.tail,
        seed=config.seed,
        mode=PermutationMode(args.mode),
        workers=config.workers,
    )

    out = config.output
    files = {out / "report.csv": dumps_csv(REPORT_COLUMNS, report_rows(report))}
    for row in report.rows:
        if row.elements:
            files[out / f"plot_n{row.n:02d}.csv"] = dumps_csv(PLOT_COLUMNS, plot_rows(a, b, row.n))

    # Perfil rango-frecuencia en la mayor longitud común
    top = max(row.n for row in report.rows)
    exponents = {}
    for name, seq in (("a", a), ("b", b)):
        rows, exponent = rank_frequency(seq.per_n[top])
        files[out / f"rankfreq_{name}.csv"] = dumps_csv(RANKFREQ_COLUMNS, rows)
        exponents[f"{report.meta[name]} (n={top})"] = exponent

    files[out / "report.md"] = render_report(report, exponents)
    paths = write_all(files)
    record_artifacts(config, "compare", f"{report.meta['a']}~{report.meta['b']}", paths)

    for row in report.rows:
        if row.comparable:
            sig = row.significance
            print(f"n={row.n} elementos={row.elements} rho={row.spearman:.4f} p={sig.p_value:.4g} {sig.verdict.value}")
        else:
            print(f"n={row.n} elementos={row.elements} {row.note}")
    return 0
