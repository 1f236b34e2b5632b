"""
Servicios del Sistema NatDist
"""
from .registry import RunRegistry

__all__ = ["RunRegistry"]
