"""
NatDist - Distribuciones naturales de complejidad
Entry point del CLI
"""
import argparse
import logging
import sys

from pydantic import ValidationError

from commands import COMMANDS
from config import LOG_LEVEL, TOOL_NAME, TOOL_VERSION
from errors import NatDistError

logger = logging.getLogger(TOOL_NAME)


class ArgumentParser(argparse.ArgumentParser):
    """Errores de uso con código de salida 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(
        prog=TOOL_NAME,
        description="Distribuciones de salida de máquinas de Turing y autómatas celulares pequeños",
    )
    parser.add_argument("--log-level", dest="log_level", default=LOG_LEVEL.upper(), type=str.upper,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def setup_logging(level: str):
    # stdout queda solo para resultados
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1

    setup_logging(args.log_level)

    # Manejador global: excepción -> código de salida
    try:
        return args.func(args)
    except NatDistError as e:
        logger.error("❌ %s", e)
        return e.exit_code
    except ValidationError as e:
        logger.error("❌ Configuración inválida: %s", e)
        return 1
    except OSError as e:
        logger.error("❌ Error de E/S: %s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
