"""
Subcomando `naturalness` - prueba de preservación de orden contra una referencia
"""
import argparse
from pathlib import Path

from commands.common import add_common_flags, load_config, record_artifacts
from models.report import Tail
from services.analysis import naturalness_test
from services.storage import EVIDENCE_COLUMNS, dumps_csv, evidence_rows, load_sequence, write_all


def register(subparsers):
    parser = subparsers.add_parser("naturalness", help="¿El candidato preserva el orden de la referencia?")
    parser.add_argument("candidate", type=Path)
    parser.add_argument("reference", type=Path)
    parser.add_argument("--c", type=float, default=argparse.SUPPRESS, help="Umbral de significancia (0.01)")
    parser.add_argument("--tail", choices=[t.value for t in Tail], default=argparse.SUPPRESS)
    add_common_flags(parser)
    parser.set_defaults(func=cmd_naturalness)


def cmd_naturalness(args: argparse.Namespace) -> int:
    config = load_config(args)
    candidate = load_sequence(args.candidate)
    reference = load_sequence(args.reference)

    verdict = naturalness_test(
        candidate, reference,
        c=config.c,
        tail=config.tail,
        seed=config.seed,
        workers=config.workers,
    )

    path = config.output / "evidence.csv"
    write_all({path: dumps_csv(EVIDENCE_COLUMNS, evidence_rows(verdict))})
    tag = candidate.model.tag if candidate.model else "derived"
    record_artifacts(config, "naturalness", tag, [path])

    # El veredicto es un dato: el código de salida es 0 en los tres casos
    print(verdict.label.value)
    if verdict.degree_spearman is not None:
        print(f"grado: rho medio {verdict.degree_spearman:.4f}, pares concordantes {verdict.degree_preserved:.4f}")
    for item in verdict.flagged:
        print(f"n={item.n} rho={item.spearman:.4f} p={item.p_value:.4g} (no pasa c={verdict.c})")
    return 0
