"""Homomorphisms between the Weyl modules Delta(a, b, 1^d) and Delta(a+d, b)."""

from .errors import DomainError, InvariantViolation, ParameterError, UnsupportedRegime, WeylHomError
from .tabcomb import FamilyInstance, TableauKey

__version__ = "0.1.0"

__all__ = [
    "FamilyInstance",
    "TableauKey",
    "WeylHomError",
    "ParameterError",
    "DomainError",
    "InvariantViolation",
    "UnsupportedRegime",
]
