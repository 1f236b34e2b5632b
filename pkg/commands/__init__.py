"""
Subcomandos del CLI NatDist
"""
from . import compare, distribution, enumeration, estimate, natural, naturalness, runs, significance

COMMANDS = [enumeration, distribution, compare, naturalness, significance, estimate, natural, runs]

__all__ = ["COMMANDS"]
