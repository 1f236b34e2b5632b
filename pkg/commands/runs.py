"""
Subcomando `runs` - listar el registro de corridas
"""
import argparse

from commands.common import load_config
from database import get_session
from errors import ConfigError
from services.registry import RunRegistry


def register(subparsers):
    parser = subparsers.add_parser("runs", help="Listar artefactos registrados")
    parser.add_argument("--limit", type=int, default=20)
    parser.add_argument("--digest", default=None, help="Buscar por SHA-256")
    parser.add_argument("--registry-url", dest="registry_url", default=argparse.SUPPRESS)
    parser.set_defaults(func=cmd_runs)


def cmd_runs(args: argparse.Namespace) -> int:
    config = load_config(args)
    if not config.registry_url:
        raise ConfigError("El registro de corridas está desactivado (NATDIST_DATABASE_URL vacío)")

    with get_session(config.registry_url) as db:
        registry = RunRegistry(db)
        records = registry.find_by_digest(args.digest) if args.digest else registry.list_runs(args.limit)
        for r in records:
            n = "-" if r.n is None else r.n
            print(f"{r.id}\t{r.created_at.isoformat()}\t{r.command}\t{r.model}\tn={n}\tseed={r.seed}\t{r.digest[:12]}\t{r.path}")
    if not records:
        print("sin corridas registradas")
    return 0
