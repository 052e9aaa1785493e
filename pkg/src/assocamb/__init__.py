"""Associative functions on bitstrings and their ambiguity."""

from .ambiguity import BinaryOperation, concatenation, left_projection, shortlex_max
from .aowf import MOD3_FEW, PARITY_UP, SigmaAOWF
from .gconstruct import GMachine
from .strings import Multiset

__all__ = [
    "BinaryOperation",
    "GMachine",
    "MOD3_FEW",
    "Multiset",
    "PARITY_UP",
    "SigmaAOWF",
    "concatenation",
    "left_projection",
    "shortlex_max",
]
