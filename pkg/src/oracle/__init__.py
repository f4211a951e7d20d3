"""
Independent cross-check: finite-volume pencil, dense QR eigensolver and
mesh-refinement extrapolation.
"""

from .discretize import DiscreteOperator, discretize, dump_pencil
from .eigensolver import matrix_eigenvalues, pair_conjugates, pencil_eigenvalues
from .extrapolate import ExtrapolatedEigenvalue, agreement_check, extrapolate, refined_size

__all__ = [
    "DiscreteOperator",
    "discretize",
    "dump_pencil",
    "matrix_eigenvalues",
    "pair_conjugates",
    "pencil_eigenvalues",
    "ExtrapolatedEigenvalue",
    "agreement_check",
    "extrapolate",
    "refined_size",
]
