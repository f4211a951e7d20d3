"""
Eigenfunction classification: oscillation counts, quadratic forms, ghost
classes and orthogonality identities.
"""

from .ghosts import GhostClass, GhostTag
from .oscillation import count_sign_changes, oscillation_count
from .forms import FormGap, FormValues, as_multiplier, form_values, quadratic_form_gap
from .classify import DEFAULT_TOL_DEG, annotate_inventory, annotate_pair, classify
from .orthogonality import OrthogonalityReport, ResidualRecord, orthogonality_residuals, pair_residuals

__all__ = [
    "GhostClass",
    "GhostTag",
    "count_sign_changes",
    "oscillation_count",
    "FormGap",
    "FormValues",
    "as_multiplier",
    "form_values",
    "quadratic_form_gap",
    "DEFAULT_TOL_DEG",
    "annotate_inventory",
    "annotate_pair",
    "classify",
    "OrthogonalityReport",
    "ResidualRecord",
    "orthogonality_residuals",
    "pair_residuals",
]
