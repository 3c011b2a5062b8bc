"""Exact integral homology for precyclic modules.

Integer linear algebra (Smith normal form), chain complexes and bicomplexes,
precyclic modules with their derived operators, Hochschild, cyclic and
Connes homology, the SBI periodicity sequence, and symbolic identities of
the algebraic simplices.
"""

from .complexes import ChainComplex, IncompleteData, homology
from .core import (
    PrecyclicModule,
    connes_homology,
    cyclic_homology,
    sbi_sequence,
    underlying_complex,
    verify_bar_acyclicity,
    verify_identities,
    verify_rational_comparison,
)
from .generators import (
    EXAMPLES,
    AlgebraPresentation,
    dual_numbers,
    hochschild_module,
    point_module,
)
from .linalg import AbelianGroupStructure, IntegerMatrix, smith_normal_form
from .modfile import load_module, save_module
from .simplex import SimplexKind, verify_simplex_identities

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupStructure",
    "AlgebraPresentation",
    "ChainComplex",
    "EXAMPLES",
    "IncompleteData",
    "IntegerMatrix",
    "PrecyclicModule",
    "SimplexKind",
    "connes_homology",
    "cyclic_homology",
    "dual_numbers",
    "hochschild_module",
    "homology",
    "load_module",
    "point_module",
    "save_module",
    "sbi_sequence",
    "smith_normal_form",
    "underlying_complex",
    "verify_bar_acyclicity",
    "verify_identities",
    "verify_rational_comparison",
    "verify_simplex_identities",
]
