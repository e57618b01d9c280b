"""Exact character tables of symmetric and alternating groups, and reconstruction of their labels."""
from .algebraic import Quad, quad
from .brauer import DecompositionMatrix, build_brauer_table, bundled_decomposition
from .characters import build_an_table, build_sn_table, mn_value
from .tables import CharTable, Label

__version__ = "0.1.0"

__all__ = [
    "CharTable",
    "DecompositionMatrix",
    "Label",
    "Quad",
    "build_an_table",
    "build_brauer_table",
    "build_sn_table",
    "bundled_decomposition",
    "mn_value",
    "quad",
]
